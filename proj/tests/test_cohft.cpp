#include "doctest.h"

#include "tautdr/cohft.hpp"
#include "tautdr/errors.hpp"

using namespace tautdr;

TEST_CASE("insertion pairing")
{
    const auto one = InsertionElement::unit();
    const auto omega = InsertionElement::point();
    CHECK(insertion_pairing(one, omega) == 1);
    CHECK(insertion_pairing(one, one) == 0);
    CHECK(insertion_pairing(omega, omega) == 0);
    CHECK(insertion_pairing(InsertionElement::unit(1), InsertionElement::unit(-1)) == 1);
    CHECK(insertion_pairing(InsertionElement::unit(1), InsertionElement::unit(2)) == 0);
    CHECK(insertion_pairing(InsertionElement::unit(3), one) == 0);
    // bilinear
    const InsertionElement mixed{0, 2, 3};
    CHECK(insertion_pairing(mixed, mixed) == 12);
    CHECK_THROWS_AS((InsertionElement{1, 0, 1}.validate()), InvalidInput);
}

TEST_CASE("truncated basis and Gram matrix")
{
    for (int K : {1, 2, 5}) {
        const auto basis = truncated_basis(K);
        CHECK(basis.size() == static_cast<std::size_t>(2 + 2 * K));
        const auto G = gram_matrix(basis);
        const auto Ginv = inverse(G);
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j) {
                CHECK(G[i][j] == G[j][i]);
                if (basis[i].level + basis[j].level != 0) CHECK(G[i][j] == 0);
                Rational e = 0;
                for (std::size_t k = 0; k < basis.size(); ++k) e += G[i][k] * Ginv[k][j];
                CHECK(e == (i == j ? 1 : 0));
            }
    }
    CHECK_THROWS_AS(inverse(RationalMatrix{{1, 2}, {2, 4}}), InvalidInput);
}

TEST_CASE("example values")
{
    const auto ex = example_omega_values();
    CHECK(ex.omega_113 == 1);
    for (int i : {5, -2, 1, -1, 17, -17}) CHECK(ex.omega_033(i) == 1);
    CHECK_THROWS_AS(ex.omega_033(0), InvalidInput);
}

TEST_CASE("genus-0 three-point data")
{
    const auto one = InsertionElement::unit();
    const auto omega = InsertionElement::point();
    CHECK(omega_030(one, one, omega) == Rational(1));
    CHECK(omega_030(one, one, one) == Rational(0));
    CHECK(omega_030(one, InsertionElement::unit(4), InsertionElement::unit(-4)) == Rational(1));
    CHECK(omega_030(one, InsertionElement::unit(4), InsertionElement::unit(-3)) == Rational(0));
    CHECK_FALSE(omega_030(InsertionElement::unit(1), InsertionElement::unit(1), InsertionElement::unit(-2)).has_value());
}

TEST_CASE("loop demo")
{
    CHECK(loop_axiom_demo(1).partial_rhs == 4);
    CHECK(loop_axiom_demo(3).partial_rhs == 8);
    CHECK(loop_axiom_demo(10).partial_rhs == 22);
    for (int K = 2; K <= 12; ++K) {
        const auto a = loop_axiom_demo(K - 1), b = loop_axiom_demo(K);
        CHECK(b.partial_rhs - a.partial_rhs == 2);
        CHECK(b.lhs == 1);
    }
    CHECK_THROWS_AS(loop_axiom_demo(0), InvalidInput);
}

TEST_CASE("constant family satisfies every axiom")
{
    CohFTFamily f;
    f.basis_names = {"1"};
    f.eta = {{1}};
    f.unit = 0;
    f.range = {{0, 3}, {0, 4}, {0, 5}, {1, 1}, {1, 2}, {2, 0}};
    f.omega = [](int g, const std::vector<int>& in) -> std::optional<TautClass> {
        return TautClass::fundamental(g, static_cast<int>(in.size()));
    };
    const auto rep = cohft_axiom_predicates(f);
    for (const auto* ax : {&rep.symmetry, &rep.unit, &rep.splitting, &rep.loop}) {
        CHECK(ax->holds());
        CHECK(ax->complete());
    }
    CHECK(rep.splitting.checked > 0);
    CHECK(rep.loop.checked > 0);
    CHECK_FALSE(rep.partial());
}

TEST_CASE("symmetry violation is flagged")
{
    CohFTFamily f;
    f.basis_names = {"a", "b"};
    f.eta = {{1, 0}, {0, 1}};
    f.unit = 0;
    f.range = {{0, 4}};
    // psi at the first leg whenever the first input is b: not S_4 equivariant
    f.omega = [](int g, const std::vector<int>& in) -> std::optional<TautClass> {
        if (in[0] == 1) return psi_monomial(g, {1, 0, 0, 0});
        return TautClass::fundamental(g, 4);
    };
    const auto rep = cohft_axiom_predicates(f);
    CHECK(rep.symmetry.failed > 0);
    CHECK_FALSE(rep.symmetry.failures.empty());
}

TEST_CASE("relative P1 fragment: splitting holds, loop fails")
{
    const auto rep = cohft_axiom_predicates(relative_p1_fragment(2));
    CHECK(rep.symmetry.holds());
    CHECK(rep.unit.holds());
    CHECK(rep.splitting.holds());
    CHECK(rep.loop.failed > 0);
    CHECK(rep.partial());
}
