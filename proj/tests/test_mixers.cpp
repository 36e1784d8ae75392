#include "latticefold/mixers.hpp"

#include <random>

#include "doctest.h"
#include "latticefold/statevector.hpp"
#include "support/dense_reference.hpp"

using namespace latticefold;
namespace ts = latticefold::testsupport;

namespace {

Encoding planar4() { return build_encoding(LatticeKind::Planar, 4); }

CostHamiltonian hpph_cost() {
    auto inst = make_instance("HPPH", InteractionModel::hp(), LatticeKind::Planar);
    return build_cost(planar4(), inst, default_lambda_olap(inst), false, false);
}

bool has_short_overlap(const Conformation& c) {
    auto pts = coordinates(c);
    for (size_t i = 0; i + 2 < pts.size(); ++i) {
        if (pts[i] == pts[i + 2]) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("mixer names round trip") {
    for (MixerKind kind : kAllMixers) {
        CHECK(mixer_from_name(mixer_name(kind)) == kind);
    }
    CHECK_THROWS(mixer_from_name("yy-simple"));
}

TEST_CASE("swap term") {
    auto s = swap_term(0, 1, 2);
    REQUIRE(s.size() == 2);
    for (const auto& [p, c] : s.terms()) CHECK(c == doctest::Approx(0.5));
    CHECK_THROWS(swap_term(1, 1, 2));

    // acts as |01> <-> |10>, annihilates |00> and |11>
    auto m = ts::dense_matrix(s);
    CHECK(ts::hermiticity_defect(m, 4) < 1e-15);
    auto e01 = std::vector<ts::cplx>{0, 1, 0, 0};
    auto out = ts::dense_apply(m, e01, 4);
    CHECK(std::abs(out[2] - ts::cplx{1, 0}) < 1e-15);
    CHECK(std::abs(out[0]) + std::abs(out[1]) + std::abs(out[3]) < 1e-15);
    auto e00 = std::vector<ts::cplx>{1, 0, 0, 0};
    for (const auto& a : ts::dense_apply(m, e00, 4)) CHECK(std::abs(a) < 1e-15);
    auto e11 = std::vector<ts::cplx>{0, 0, 0, 1};
    for (const auto& a : ts::dense_apply(m, e11, 4)) CHECK(std::abs(a) < 1e-15);

    // squares to the projector onto the odd-weight pair subspace
    auto sq = s * s;
    auto msq = ts::dense_matrix(sq);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            double want = (i == j && (i == 1 || i == 2)) ? 1.0 : 0.0;
            CHECK(std::abs(msq[i * 4 + j] - want) < 1e-15);
        }
    }

    // commutes with the pair weight operator q_i + q_j
    auto weight = to_pauli(BooleanPolynomial::variable(0) + BooleanPolynomial::variable(1), 2);
    CHECK((s * weight) == (weight * s));
}

TEST_CASE("flip term expansion") {
    auto e = planar4();
    auto f20 = flip_term(e, 2, 0);
    CHECK(f20.size() == 8);  // X on q2 times (1+Z)/2 over q3, q4, q5
    for (const auto& [p, c] : f20.terms()) {
        CHECK(c == doctest::Approx(1.0 / 8.0));
        CHECK(p.letter(2) == 'X');
    }
    auto f10 = flip_term(e, 1, 0);  // fixed zeros contribute factor 1
    CHECK(f10.size() == 2);
    for (const auto& [p, c] : f10.terms()) CHECK(c == doctest::Approx(0.5));
    CHECK_THROWS(flip_term(e, 1, 2));

    // maps the empty tuple to one-hot k and back; annihilates other tuples
    auto m = ts::dense_matrix(f10);
    Statevector empty = Statevector::basis_state(6, 0);
    auto out = ts::dense_apply(m, empty.amps, 64);
    CHECK(std::abs(out[0b100000] - ts::cplx{1, 0}) < 1e-14);
    Statevector q1on = Statevector::basis_state(6, 0b010000);
    for (const auto& a : ts::dense_apply(m, q1on.amps, 64)) CHECK(std::abs(a) < 1e-14);
}

TEST_CASE("mixer term counts at planar N=4") {
    auto e = planar4();
    CHECK(build_mixer(e, MixerKind::X).pauli.size() == 6);
    CHECK(build_mixer(e, MixerKind::XYSimple).pauli.size() == 14);  // 7 swaps
    CHECK(build_mixer(e, MixerKind::XZSimple).pauli.size() == 36);  // 2*2 + 4*8
}

TEST_CASE("short-range controls resolve fixed neighbors") {
    auto e = planar4();
    auto xy_short = build_mixer(e, MixerKind::XYShort);
    std::map<std::string, double> coeffs;
    for (const auto& [p, c] : xy_short.pauli.terms()) coeffs[p.to_letters(6)] = c;
    // Turn 1 swapping R<->U is controlled on turn 2 not going L or D
    // (qubits 4 and 5); turn 0 resolves to a constant factor because it
    // never points L or D. Two ordered terms merge.
    CHECK(coeffs.at("XXIIII") == doctest::Approx(0.25));
    CHECK(coeffs.at("XXIIIZ") == doctest::Approx(0.25));
    CHECK(coeffs.at("XXIIZI") == doctest::Approx(0.25));
    CHECK(coeffs.at("XXIIZZ") == doctest::Approx(0.25));
    // Turn 2 swapping R<->U: both opposites are directions turn 1 cannot
    // encode, so every control resolves to one.
    CHECK(coeffs.at("IIXXII") == doctest::Approx(1.0));
    // Turn 2 swapping R<->L: the control lands on turn 1's R qubit.
    CHECK(coeffs.at("IIXIXI") == doctest::Approx(0.5));
    CHECK(coeffs.at("ZIXIXI") == doctest::Approx(0.5));
    CHECK(mixer_covers_short_range(MixerKind::XYShort));
    CHECK_FALSE(mixer_covers_long_range(MixerKind::XYShort));
}

TEST_CASE("long variants degenerate to short at N=4") {
    auto e = planar4();
    CHECK(build_mixer(e, MixerKind::XYLong).pauli == build_mixer(e, MixerKind::XYShort).pauli);
    CHECK(build_mixer(e, MixerKind::XZLong).pauli == build_mixer(e, MixerKind::XZShort).pauli);
}

TEST_CASE("all mixers are Hermitian with real coefficients") {
    for (auto [lattice, N] : {std::pair{LatticeKind::Planar, 4}, {LatticeKind::Cubic, 4},
                              {LatticeKind::Planar, 5}}) {
        auto e = build_encoding(lattice, N);
        for (MixerKind kind : kAllMixers) {
            auto m = build_mixer(e, kind);
            CHECK(m.pauli.n_qubits() == e.n_qubits);
            if (e.n_qubits <= 7) {
                auto dense = ts::dense_matrix(m.pauli);
                CHECK(ts::hermiticity_defect(dense, std::size_t{1} << e.n_qubits) < 1e-12);
            }
        }
    }
}

TEST_CASE("dense evolution preserves the feasible subspaces") {
    auto e = planar4();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> beta_dist(0.0, 3.14159);
    for (MixerKind kind : kAllMixers) {
        auto mode = mixer_feasible_mode(kind);
        if (!mode) continue;
        auto m = build_mixer(e, kind);
        auto dense = ts::dense_matrix(m.pauli);
        ts::HermitianExponential expo(dense, 64);

        std::vector<bool> feasible(64, false);
        for (const auto& b : feasible_states(e, *mode)) feasible[b.index()] = true;

        Statevector psi = prepare_feasible(e, FeasibleMode::XY);
        for (int round = 0; round < 5; ++round) {
            auto evolved = expo.evolve(psi.amps, beta_dist(rng));
            double leak = 0.0;
            for (std::uint64_t i = 0; i < 64; ++i) {
                if (!feasible[i]) leak += std::norm(evolved[i]);
            }
            CHECK(leak < 1e-10);
        }
    }
}

TEST_CASE("short-range mixers never create short-range overlaps") {
    // exhaustive over overlap-free feasible start states, N=4 and N=5
    for (int N : {4, 5}) {
        auto e = build_encoding(LatticeKind::Planar, N);
        auto xy_states = feasible_states(e, FeasibleMode::XY);
        std::vector<std::uint64_t> short_overlap;
        for (const auto& b : xy_states) {
            if (has_short_overlap(*decode(e, b))) short_overlap.push_back(b.index());
        }
        for (MixerKind kind :
             {MixerKind::XYShort, MixerKind::XZShort, MixerKind::XYLong, MixerKind::XZLong}) {
            auto m = build_mixer(e, kind);
            PauliAction action(m.pauli);
            for (const auto& b : xy_states) {
                if (has_short_overlap(*decode(e, b))) continue;
                auto psi = Statevector::basis_state(e.n_qubits, b.index());
                psi = evolve_pauli_exact(std::move(psi), action, 0.9, 1e-12);
                double bad = 0.0;
                for (auto idx : short_overlap) bad += std::norm(psi.amps[idx]);
                CHECK(bad < 1e-10);
            }
        }
    }
}

TEST_CASE("long-range mixer blocks every overlap at N=4") {
    auto e = planar4();
    auto m = build_mixer(e, MixerKind::XYLong);
    PauliAction action(m.pauli);
    std::vector<std::uint64_t> overlapping;
    for (const auto& b : feasible_states(e, FeasibleMode::XY)) {
        if (!is_self_avoiding(*decode(e, b))) overlapping.push_back(b.index());
    }
    for (const auto& b : feasible_states(e, FeasibleMode::XY)) {
        if (!is_self_avoiding(*decode(e, b))) continue;
        auto psi = Statevector::basis_state(e.n_qubits, b.index());
        psi = evolve_pauli_exact(std::move(psi), action, 1.3, 1e-12);
        double bad = 0.0;
        for (auto idx : overlapping) bad += std::norm(psi.amps[idx]);
        CHECK(bad < 1e-10);
    }
}

TEST_CASE("long-range distance controls block the overlap the short guard misses") {
    // RULU is overlap-free; swapping turn 3 from U to D gives RULD, which
    // puts residue 4 back on residue 0. The neighbor guards cannot see that
    // pair, but the substituted squared distance to residue 0 vanishes.
    for (auto lattice : {LatticeKind::Planar, LatticeKind::Cubic}) {
        auto e = build_encoding(lattice, 5);
        auto start = Conformation::from_string(lattice, "RULU");
        auto target = Conformation::from_string(lattice, "RULD");
        REQUIRE(is_self_avoiding(start));
        REQUIRE_FALSE(is_self_avoiding(target));

        // generator matrix elements: the direct hop carries the substituted
        // distance factor (zero on an overlap), the short form does not
        auto with_dist = build_mixer(e, MixerKind::XYLong);
        auto without = build_mixer(e, MixerKind::XYShort);
        CHECK(with_dist.pauli.size() > without.pauli.size());
        auto psi = Statevector::basis_state(e.n_qubits, encode(e, start).index());
        std::uint64_t bad = encode(e, target).index();
        CHECK(std::abs(PauliAction(with_dist.pauli).apply(psi.amps)[bad]) < 1e-12);
        CHECK(std::abs(PauliAction(without.pauli).apply(psi.amps)[bad]) > 0.1);
    }
}

TEST_CASE("cubic long-range mixers stay inside the feasible set") {
    auto e = build_encoding(LatticeKind::Cubic, 5);  // 13 qubits
    std::vector<bool> ok(std::size_t{1} << e.n_qubits, false);
    for (const auto& b : feasible_states(e, FeasibleMode::XY)) ok[b.index()] = true;
    auto m = build_mixer(e, MixerKind::XYLong);
    PauliAction action(m.pauli);
    auto psi = prepare_feasible(e, FeasibleMode::XY);
    psi = evolve_pauli_exact(std::move(psi), action, 0.8, 1e-11);
    double leak = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        if (!ok[i]) leak += std::norm(psi.amps[i]);
    }
    CHECK(leak < 1e-10);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
}

TEST_CASE("xy-simple commutes with every per-turn weight operator") {
    auto e = planar4();
    auto m = build_mixer(e, MixerKind::XYSimple);
    for (int t = 1; t <= e.last_turn(); ++t) {
        BooleanPolynomial weight;
        for (int k = 0; k < 4; ++k) {
            if (e.slot(t, k).is_variable()) {
                weight += BooleanPolynomial::variable(e.slot(t, k).qubit);
            }
        }
        auto w = to_pauli(weight, 6);
        CHECK((m.pauli * w) == (w * m.pauli));
    }
}

TEST_CASE("commutator probe") {
    auto h_c = hpph_cost();
    auto e = planar4();
    for (MixerKind kind : kAllMixers) {
        CHECK(commutator_nonzero(h_c, build_mixer(e, kind), 1e-9, 3));
    }
    // a diagonal "mixer" commutes with the diagonal cost
    MixerHamiltonian diag{MixerKind::X, h_c.pauli(), e};
    CHECK_FALSE(commutator_nonzero(h_c, diag, 1e-9, 3));
    MixerHamiltonian zero{MixerKind::X, PauliSum(6), e};
    CHECK_FALSE(commutator_nonzero(h_c, zero, 1e-9, 3));
}
