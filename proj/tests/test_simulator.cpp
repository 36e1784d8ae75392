#include "latticefold/statevector.hpp"

#include <cstdio>
#include <random>

#include "doctest.h"
#include "latticefold/mixers.hpp"
#include "support/dense_reference.hpp"

using namespace latticefold;
namespace ts = latticefold::testsupport;

namespace {

Encoding planar4() { return build_encoding(LatticeKind::Planar, 4); }

CostHamiltonian hpph_cost() {
    auto inst = make_instance("HPPH", InteractionModel::hp(), LatticeKind::Planar);
    return build_cost(planar4(), inst, default_lambda_olap(inst), false, false);
}

double vec_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("prepare_uniform") {
    auto psi = prepare_uniform(6);
    for (const auto& a : psi.amps) CHECK(std::norm(a) == doctest::Approx(1.0 / 64));
    auto one = prepare_uniform(1);
    CHECK(one.amps[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(one.amps[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("prepare_feasible") {
    auto e = planar4();
    auto xy = prepare_feasible(e, FeasibleMode::XY);
    int nonzero = 0;
    for (const auto& a : xy.amps) {
        if (std::abs(a) > 0) {
            ++nonzero;
            CHECK(std::norm(a) == doctest::Approx(1.0 / 8));
        }
    }
    CHECK(nonzero == 8);
    auto xz = prepare_feasible(e, FeasibleMode::XZ);
    CHECK(norm(xz.amps[Bitstring::parse("10 0000").index()]) == doctest::Approx(1.0 / 15));
}

TEST_CASE("evolve_cost is a diagonal phase") {
    auto h = hpph_cost();
    auto psi = prepare_uniform(6);
    auto same = evolve_cost(psi, h, 0.0);
    CHECK(vec_distance(psi.amps, same.amps) < 1e-15);

    auto rotated = evolve_cost(psi, h, 0.8);
    for (size_t i = 0; i < 64; ++i) {
        CHECK(std::abs(rotated.amps[i]) == doctest::Approx(std::abs(psi.amps[i])));
    }
    // additivity
    auto twice = evolve_cost(evolve_cost(psi, h, 0.3), h, 0.5);
    CHECK(vec_distance(twice.amps, rotated.amps) < 1e-12);
}

TEST_CASE("x mixer evolution equals a product of single-qubit rotations") {
    auto e = planar4();
    auto mixer = build_mixer(e, MixerKind::X);
    auto psi = random_statevector(6, 17);
    double beta = 0.37;
    auto evolved = evolve_mixer(psi, mixer, beta, {});

    // reference: apply exp(-i beta X) qubit by qubit
    auto ref = psi.amps;
    for (int q = 0; q < 6; ++q) {
        std::uint64_t stride = std::uint64_t{1} << (6 - 1 - q);
        auto next = ref;
        for (std::uint64_t i = 0; i < 64; ++i) {
            next[i] = std::cos(beta) * ref[i] + cplx{0, -std::sin(beta)} * ref[i ^ stride];
        }
        ref = next;
    }
    CHECK(vec_distance(evolved.amps, ref) < 1e-10);
}

TEST_CASE("beta=0 is the identity and norms are preserved") {
    auto e = planar4();
    auto psi = random_statevector(6, 8);
    for (MixerKind kind : kAllMixers) {
        auto mixer = build_mixer(e, kind);
        auto same = evolve_mixer(psi, mixer, 0.0, {});
        CHECK(vec_distance(psi.amps, same.amps) < 1e-15);
        auto moved = evolve_mixer(psi, mixer, 0.9, {});
        CHECK(std::abs(moved.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("exact evolution matches the dense eigendecomposition reference") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> beta_dist(-3.0, 3.0);
    for (auto [lattice, N] : {std::pair{LatticeKind::Planar, 4}, {LatticeKind::Cubic, 4}}) {
        auto e = build_encoding(lattice, N);
        std::size_t dim = std::size_t{1} << e.n_qubits;
        for (MixerKind kind : kAllMixers) {
            auto mixer = build_mixer(e, kind);
            ts::HermitianExponential expo(ts::dense_matrix(mixer.pauli), dim);
            auto psi = random_statevector(e.n_qubits, 23 + static_cast<int>(kind));
            for (int round = 0; round < 3; ++round) {
                double beta = beta_dist(rng);
                auto fast = evolve_mixer(psi, mixer, beta, {});
                auto ref = expo.evolve(psi.amps, beta);
                CHECK(vec_distance(fast.amps, ref) < 1e-8);
            }
        }
    }
}

TEST_CASE("subspace projection path agrees with the full-space path") {
    auto e = planar4();
    EvolutionConfig sub;
    sub.subspace_projection = true;
    for (MixerKind kind : {MixerKind::XYSimple, MixerKind::XZSimple, MixerKind::XYShort}) {
        auto mixer = build_mixer(e, kind);
        auto psi = prepare_feasible(e, FeasibleMode::XY);
        psi = evolve_cost(psi, hpph_cost(), 0.4);  // something non-trivial in the subspace
        auto a = evolve_mixer(psi, mixer, 1.1, {});
        auto b = evolve_mixer(psi, mixer, 1.1, sub);
        CHECK(vec_distance(a.amps, b.amps) < 1e-9);
    }
    // X mixer leaves the subspace; the projected path falls back to exact
    auto x = build_mixer(e, MixerKind::X);
    auto psi = prepare_feasible(e, FeasibleMode::XY);
    CHECK(vec_distance(evolve_mixer(psi, x, 0.7, {}).amps,
                       evolve_mixer(psi, x, 0.7, sub).amps) < 1e-9);
}

TEST_CASE("xy mixers keep feasible amplitude in the feasible set") {
    auto e = planar4();
    auto psi = prepare_feasible(e, FeasibleMode::XY);
    auto mixer = build_mixer(e, MixerKind::XYSimple);
    auto evolved = evolve_mixer(psi, mixer, 0.7, {});
    std::vector<bool> ok(64, false);
    for (const auto& b : feasible_states(e, FeasibleMode::XY)) ok[b.index()] = true;
    double leak = 0.0;
    for (std::uint64_t i = 0; i < 64; ++i) {
        if (!ok[i]) leak += std::norm(evolved.amps[i]);
    }
    CHECK(leak < 1e-10);
}

TEST_CASE("trotterization approaches the exact evolution") {
    auto e = planar4();
    auto mixer = build_mixer(e, MixerKind::XZShort);  // non-commuting terms
    auto psi = prepare_feasible(e, FeasibleMode::XY);
    double beta = 1.3;
    auto exact = evolve_mixer(psi, mixer, beta, {});
    double prev = 1e9;
    for (int steps : {1, 4, 16, 64}) {
        EvolutionConfig cfg;
        cfg.mode = EvolutionMode::Trotter;
        cfg.trotter_steps = steps;
        double err = vec_distance(evolve_mixer(psi, mixer, beta, cfg).amps, exact.amps);
        CHECK(err <= prev * 1.05 + 1e-12);
        prev = err;
    }
    EvolutionConfig coarse{EvolutionMode::Trotter, 1, 1e-10, false};
    EvolutionConfig fine{EvolutionMode::Trotter, 64, 1e-10, false};
    double e1 = vec_distance(evolve_mixer(psi, mixer, beta, coarse).amps, exact.amps);
    double e64 = vec_distance(evolve_mixer(psi, mixer, beta, fine).amps, exact.amps);
    CHECK(e64 < e1 * 0.1);
}

TEST_CASE("expectation values") {
    auto h = hpph_cost();
    auto diag = h.diagonal();
    for (std::uint64_t idx : {0u, 18u, 63u}) {
        auto psi = Statevector::basis_state(6, idx);
        CHECK(expectation(psi, h) == doctest::Approx(diag[idx]));
    }
    double mean = 0.0;
    for (double v : diag) mean += v / 64.0;
    CHECK(expectation(prepare_uniform(6), h) == doctest::Approx(mean));
}

TEST_CASE("sampled expectation converges") {
    auto h = hpph_cost();
    auto psi = prepare_feasible(planar4(), FeasibleMode::XY);
    double exact = expectation(psi, h);
    // 3 sigma of the per-shot spread
    auto diag = h.diagonal();
    double var = 0.0;
    for (const auto& b : feasible_states(planar4(), FeasibleMode::XY)) {
        double d = diag[b.index()] - exact;
        var += d * d / 8.0;
    }
    int shots = 100000;
    double sampled = sampled_expectation(psi, h, shots, 77);
    CHECK(std::abs(sampled - exact) < 3.0 * std::sqrt(var / shots));
    // determinism
    CHECK(sampled_expectation(psi, h, 1000, 5) == sampled_expectation(psi, h, 1000, 5));
    CHECK(sample_indices(psi, 64, 9) == sample_indices(psi, 64, 9));
}

TEST_CASE("ground state probability") {
    auto e = planar4();
    auto inst = make_instance("HPPH", InteractionModel::hp(), LatticeKind::Planar);
    auto ground = ground_state_indices(e, enumerate_folds(inst));
    REQUIRE(ground.size() == 1);
    CHECK(ground_state_probability(prepare_uniform(6), ground) == doctest::Approx(1.0 / 64));
    CHECK(ground_state_probability(prepare_feasible(e, FeasibleMode::XY), ground) ==
          doctest::Approx(1.0 / 8));
    CHECK(ground_state_probability(Statevector::basis_state(6, ground[0]), ground) ==
          doctest::Approx(1.0));
}

TEST_CASE("run_qaoa") {
    auto e = planar4();
    auto inst = make_instance("HPPH", InteractionModel::hp(), LatticeKind::Planar);
    auto h = build_cost(e, inst, default_lambda_olap(inst), false, false);
    auto mixer = build_mixer(e, MixerKind::XYSimple);
    auto ground = ground_state_indices(e, enumerate_folds(inst));

    auto p0 = run_qaoa(e, h, mixer, QaoaSchedule{}, InitKind::Feasible, {}, ground);
    CHECK(p0.ground_probability == doctest::Approx(1.0 / 8));
    CHECK(p0.expectation == doctest::Approx(expectation(prepare_feasible(e, FeasibleMode::XY), h)));

    QaoaSchedule zero{{0.0}, {0.0}};
    auto p1 = run_qaoa(e, h, mixer, zero, InitKind::Feasible, {}, ground);
    CHECK(p1.ground_probability == doctest::Approx(p0.ground_probability));
    CHECK(p1.expectation == doctest::Approx(p0.expectation));

    // depth-1 run against a dense reference
    QaoaSchedule sched{{0.9}, {0.6}};
    auto fast = run_qaoa(e, h, mixer, sched, InitKind::UniformAll, {}, ground);
    ts::HermitianExponential expo(ts::dense_matrix(mixer.pauli), 64);
    auto diag = h.diagonal();
    auto ref = prepare_uniform(6).amps;
    for (std::uint64_t i = 0; i < 64; ++i) {
        double phi = -sched.gammas[0] * diag[i];
        ref[i] *= cplx{std::cos(phi), std::sin(phi)};
    }
    ref = expo.evolve(ref, sched.betas[0]);
    CHECK(vec_distance(fast.state.amps, ref) < 1e-9);

    CHECK_THROWS(run_qaoa(e, h, mixer, QaoaSchedule{{0.1}, {}}, InitKind::Feasible, {}, ground));
}

TEST_CASE("statevector dump round trips") {
    auto psi = random_statevector(5, 3);
    std::string path = "statevector_dump_test.bin";
    write_statevector(path, psi);
    auto back = read_statevector(path);
    CHECK(back.n_qubits == 5);
    CHECK(vec_distance(psi.amps, back.amps) == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("qubit guard") {
    CHECK_THROWS(prepare_uniform(max_statevector_qubits() + 1));
    setenv("LATTICEFOLD_MAX_QUBITS", "4", 1);
    CHECK(max_statevector_qubits() == 4);
    CHECK_THROWS(prepare_uniform(5));
    CHECK(prepare_uniform(4).dim() == 16);
    unsetenv("LATTICEFOLD_MAX_QUBITS");
    CHECK(max_statevector_qubits() == 26);
}
