#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "oracles.hpp"
#include "svpqa/dynamics.hpp"
#include "svpqa/spectrum.hpp"

using namespace svpqa;

TEST_CASE("constant Hamiltonian evolution is exact for any slice count") {
  const RegisterShape shape(2, 1);
  const RealOperator h = driver_hamiltonian(FieldProfile::from_ratio(2, 0.7, 0.5), shape);
  const RealOperator hp = problem_hamiltonian(gram_from_basis(LatticeBasis::polar(1, 1.2, 1.0)), shape);
  const RealOperator combined(MatrixXr(h.matrix() + 0.3 * hp.matrix()), true);
  const StateVector psi0 = StateVector::basis_state(shape, (CoeffVector(2) << 1, -1).finished());
  const Real T = 3.7;
  const MatrixXc generator = Complex(0, -T) * combined.matrix().cast<Complex>();
  const VectorXc exact = generator.exp() * psi0.amplitudes();
  for (int steps : {1, 2, 7, 64}) {
    const StateVector out = evolve(combined, combined, psi0, Schedule(T, steps));
    CHECK((out.amplitudes() - exact).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("vanishing annealing time is the identity") {
  const RegisterShape shape(2, 2);
  const FieldProfile profile = FieldProfile::from_ratio(2, 1.0, 0.5);
  const StateVector psi0 = driver_first_excited(profile, shape);
  const StateVector out = evolve(driver_hamiltonian(profile, shape),
                                 problem_hamiltonian(GramMatrix(MatrixXr::Identity(2, 2)), shape), psi0,
                                 Schedule(1e-14, 10));
  CHECK((out.amplitudes() - psi0.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("stationary z-basis state keeps its populations") {
  const RegisterShape shape(2, 2);
  const RealOperator diag_a = problem_hamiltonian(GramMatrix(MatrixXr::Identity(2, 2)), shape);
  MatrixXr d(2, 2);
  d << 2, 0.3, 0.3, 1;
  const RealOperator diag_b = problem_hamiltonian(GramMatrix(d), shape);
  const CoeffVector m = (CoeffVector(2) << 1, -2).finished();
  const StateVector out = evolve(diag_a, diag_b, StateVector::basis_state(shape, m), Schedule(50, 100));
  CHECK(z_populations(out).at(m) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("schedule and input validation") {
  CHECK_THROWS_AS(Schedule(0.0, 10), Error);
  CHECK_THROWS_AS(Schedule(-1.0, 10), Error);
  CHECK_THROWS_AS(Schedule(1.0, 0), Error);
  const RegisterShape shape(1, 1);
  const RealOperator h = driver_hamiltonian(FieldProfile::uniform(1, 1.0), shape);
  const RealOperator big = driver_hamiltonian(FieldProfile::uniform(2, 1.0), RegisterShape(2, 1));
  const StateVector psi = driver_ground(FieldProfile::uniform(1, 1.0), shape);
  CHECK_THROWS_AS(evolve(h, big, psi, Schedule(1, 1)), Error);
  MatrixXr a(3, 3);
  a << 0, 1, 0, 2, 0, 0, 0, 0, 0;
  CHECK_THROWS_AS(evolve(h, RealOperator(a, false), psi, Schedule(1, 1)), Error);
}

TEST_CASE("midpoint propagator agrees with a refined RK4 reference on dim-3 problems") {
  const RegisterShape shape(1, 1);
  for (Real bx : {0.3, 1.0}) {
    const FieldProfile profile = FieldProfile::uniform(1, bx);
    const RealOperator hd = driver_hamiltonian(profile, shape);
    MatrixXr g(1, 1);
    g << 1.7;
    const RealOperator hp = problem_hamiltonian(GramMatrix(g), shape);
    const Real T = 8.0;
    const StateVector psi0 = driver_ground(profile, shape);
    auto h_of_t = [&](Real t) { return MatrixXr((1 - t / T) * hd.matrix() + (t / T) * hp.matrix()); };
    const VectorXc reference = oracle::rk4_converged(h_of_t, psi0.amplitudes(), T);
    const StateVector out = evolve(hd, hp, psi0, Schedule(T, 20000));
    CHECK((out.amplitudes() - reference).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("ground-state search in the sudden limit") {
  const GramMatrix g = gram_from_basis(LatticeBasis::polar(1, 1, M_PI / 6));
  const FieldProfile profile = FieldProfile::uniform(2, 1.0);
  const AnnealOutcome out = anneal({Mode::gs, g, 2, profile, 1e-12, 10});
  // Product-state populations: binomial(4, k+m)/16 per site.
  auto site = [](int m) { const Real c[] = {1, 4, 6, 4, 1}; return c[m + 2] / 16.0; };
  Real expected = 0;
  for (const CoeffVector& x : brute_force_svp(g, 2).solutions) expected += site(x[0]) * site(x[1]);
  CHECK(out.success_prob == doctest::Approx(expected).epsilon(1e-12));
  CHECK(out.failure_prob == doctest::Approx(1 - expected).epsilon(1e-12));
}

TEST_CASE("excited-state search on the orthogonal 2:1 lattice never succeeds") {
  MatrixXr d(2, 2);
  d << 4, 0, 0, 1;
  for (Real T : {5.0, 50.0}) {
    const AnnealOutcome out = anneal({Mode::ex, GramMatrix(d), 2, FieldProfile::from_ratio(2, 0.8, 0.5), T, default_steps(T)});
    CHECK(out.success_prob < 1e-6);
  }
}

TEST_CASE("anneal outcome bookkeeping") {
  const GramMatrix g = gram_from_basis(LatticeBasis::polar(1, 1, M_PI / 4));
  const AnnealOutcome out = anneal({Mode::ex, g, 2, FieldProfile::from_ratio(2, 0.6, 0.5), 10, 500});
  Real s = 0;
  for (const CoeffVector& x : out.svp.solutions) s += out.populations.at(x);
  CHECK(out.success_prob == s);
  CHECK(out.success_prob + out.failure_prob == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(out.final_state.norm() - 1) < 1e-9);
  CHECK(out.inputs.steps == 500);
  CHECK_THROWS_AS(anneal({Mode::ex, g, 2, FieldProfile::uniform(2, 0.6), 10, 500}), Error);
  CHECK_THROWS_AS(anneal({Mode::sc, g, 1, FieldProfile::from_ratio(2, 0.6, 0.5), 10, 500}), Error);
  CHECK_THROWS_AS(anneal({Mode::sc, g, 2, FieldProfile::uniform(2, 0.6), 10, 500}), Error);
}

TEST_CASE("converge_steps") {
  MatrixXr d(2, 2);
  d << 4, 0, 0, 1;
  // Failure is identically one, so the first doubling already agrees.
  const ConvergedOutcome blocked = converge_steps({Mode::ex, GramMatrix(d), 2, FieldProfile::from_ratio(2, 0.8, 0.5), 10, 0});
  CHECK(blocked.steps_used == 2 * default_steps(10));

  const AnnealInputs run{Mode::ex, gram_from_basis(LatticeBasis::polar(1, 1, M_PI / 6)), 2,
                         FieldProfile::from_ratio(2, 0.5, 0.5), 10, 0};
  const ConvergedOutcome loose = converge_steps(run, 1e-2);
  const ConvergedOutcome tight = converge_steps(run, 1e-8);
  CHECK(loose.steps_used <= tight.steps_used);
  CHECK(tight.last_change < 1e-8);
  CHECK(std::abs(tight.outcome.final_state.norm() - 1) < 1e-9);
  AnnealInputs refined = run;
  refined.steps = 2 * tight.steps_used;
  CHECK(std::abs(anneal(refined).failure_prob - tight.outcome.failure_prob) < 1e-8);

  CHECK_THROWS_AS(converge_steps(run, 0.0), Error);
  CHECK_THROWS_WITH_AS(converge_steps(run, 1e-16, 100), doctest::Contains("did not converge"), Error);
}

TEST_CASE("excited-state search improves with annealing time") {
  const GramMatrix g(MatrixXr::Identity(2, 2));
  const FieldProfile profile = FieldProfile::from_ratio(2, 0.5, 0.5);
  Real previous = -1;
  for (Real T : {20.0, 50.0, 100.0, 200.0}) {
    const Real success = anneal({Mode::ex, g, 2, profile, T, default_steps(T)}).success_prob;
    CHECK(success >= previous - 0.02);
    previous = success;
  }
  CHECK(previous > 0.9);
}

TEST_CASE("spin-coherent start never beats the exact excited state") {
  for (Real theta : {M_PI / 9, M_PI / 6, M_PI / 4}) {
    const GramMatrix g = gram_from_basis(LatticeBasis::polar(1, 1, theta));
    const FieldProfile profile = FieldProfile::from_ratio(2, 0.6, 0.5);
    const Real ex = anneal({Mode::ex, g, 2, profile, 100, 2000}).success_prob;
    const Real sc = anneal({Mode::sc, g, 2, profile, 100, 2000}).success_prob;
    CHECK(sc <= ex + 1e-9);
  }
}

TEST_CASE("mode names") {
  CHECK(parse_mode("gs") == Mode::gs);
  CHECK(to_string(Mode::sc) == "sc");
  CHECK_THROWS_AS(parse_mode("xx"), Error);
}
