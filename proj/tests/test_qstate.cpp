// Copyright 2026 The renyikw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "doctest.h"
#include "renyikw/qstate.hpp"
#include "support.hpp"

namespace {

using namespace renyikw;
using namespace renyikw::testing;

TEST_CASE("eig_hermitian") {
  SUBCASE("identity") {
    const auto e = eig_hermitian<double>(ComplexMatrix::Identity(3, 3));
    for (int i = 0; i < 3; ++i) CHECK(e.values(i) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("diagonal input keeps the standard basis") {
    ComplexMatrix h = ComplexMatrix::Zero(2, 2);
    h(0, 0) = 0.1;
    h(1, 1) = 0.9;
    const auto e = eig_hermitian<double>(h);
    CHECK(e.values(0) == doctest::Approx(0.9));
    CHECK(e.values(1) == doctest::Approx(0.1));
    CHECK(std::abs(e.vectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(e.vectors(0, 1)) == doctest::Approx(1.0));
  }
  SUBCASE("reconstruction of random Hermitian matrices") {
    Rng rng(1);
    for (std::size_t d = 1; d <= 8; ++d) {
      const ComplexMatrix h = random_hermitian(d, rng);
      const auto e = eig_hermitian<double>(h);
      const ComplexMatrix back = e.vectors * e.values.cast<std::complex<double>>().asDiagonal() * e.vectors.adjoint();
      CHECK(max_abs(back - h) < 1e-9);
      CHECK(max_abs(e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(d, d)) < 1e-9);
      for (Eigen::Index i = 1; i < e.values.size(); ++i) CHECK(e.values(i - 1) >= e.values(i));
    }
  }
  SUBCASE("non-Hermitian input") {
    ComplexMatrix h = ComplexMatrix::Identity(2, 2);
    h(0, 1) = 1e-6;
    CHECK_THROWS_AS(eig_hermitian<double>(h), Error);
    try {
      eig_hermitian<double>(h);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonHermitian);
    }
  }
}

TEST_CASE("mat_power") {
  SUBCASE("scalar matrix") {
    const ComplexMatrix p = mat_power(DensityMatrix::maximally_mixed(2), 0.5);
    CHECK(max_abs(p - ComplexMatrix::Identity(2, 2) / std::sqrt(2.0)) < 1e-12);
  }
  SUBCASE("projectors are idempotent") {
    const auto proj = bell().density();
    for (double a : {0.1, 0.5, 1.0, 1.7, 2.0}) CHECK(max_abs(mat_power(proj, a) - proj.matrix()) < 1e-10);
  }
  SUBCASE("diag(0.9, 0.1)^0.5") {
    // oracle: 30-digit evaluation of sqrt(0.9), sqrt(0.1)
    const ComplexMatrix p = mat_power(diag_state({0.9, 0.1}), 0.5);
    CHECK(std::abs(p(0, 0) - 0.948683298050513799599668) < 1e-6);
    CHECK(std::abs(p(1, 1) - 0.316227766016837933199889) < 1e-6);
  }
  SUBCASE("zero eigenvalues stay zero") {
    const ComplexMatrix p = mat_power(diag_state({1.0, 0.0}), 0.3);
    CHECK(std::abs(p(1, 1)) == 0.0);
  }
  SUBCASE("invalid alpha") {
    CHECK_THROWS_AS(mat_power(diag_state({0.5, 0.5}), 0.0), Error);
    CHECK_THROWS_AS(mat_power(diag_state({0.5, 0.5}), -1.0), Error);
  }
}

TEST_CASE("tensor") {
  CHECK(max_abs(tensor(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(6, 6)) ==
        0.0);
  const DensityMatrix p = tensor(diag_state({1.0, 0.0}), diag_state({0.0, 1.0}));
  CHECK(p.dims() == Dims{2, 2});
  CHECK(std::abs(p.matrix()(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(p.matrix().trace() - 1.0) < 1e-15);

  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix a = ginibre<double>(2, 2, rng), b = ginibre<double>(3, 3, rng);
    CHECK(std::abs(tensor(a, b).trace() - a.trace() * b.trace()) < 1e-10);
  }
}

TEST_CASE("density matrix invariants") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2) / 2.0;
  m(0, 1) = 1e-9;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(m), Error);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix::Identity(2, 2)), Error);  // trace 2
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(neg), Error);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix::Identity(4, 4) / 4.0, {2, 3}), Error);
  // tiny negative eigenvalues inside the tolerance are clipped, not rejected
  ComplexMatrix tiny = ComplexMatrix::Zero(2, 2);
  tiny(0, 0) = 1.0 + 5e-11;
  tiny(1, 1) = -5e-11;
  const auto rho = DensityMatrix::from_matrix(tiny);
  CHECK(rho.spectrum().minCoeff() >= 0.0);
}

TEST_CASE("partial_trace") {
  SUBCASE("Bell state") {
    const auto a = partial_trace(bell().density(), {0});
    CHECK(max_abs(a.matrix() - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
  }
  SUBCASE("product state") {
    Rng rng(3);
    const auto ra = random_mixed<double>({2}, 2, rng), rb = random_mixed<double>({3}, 2, rng);
    const auto ab = tensor(ra, rb);
    CHECK(max_abs(partial_trace(ab, {0}).matrix() - ra.matrix()) < 1e-12);
    CHECK(max_abs(partial_trace(ab, {1}).matrix() - rb.matrix()) < 1e-12);
  }
  SUBCASE("random 2x3 states stay valid") {
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
      const auto rho = random_mixed<double>({2, 3}, 1 + t % 6, rng);
      for (std::size_t keep = 0; keep < 2; ++keep) {
        const auto r = partial_trace(rho, {keep});
        CHECK(std::abs(r.matrix().trace() - 1.0) < 1e-12);
        CHECK(r.spectrum().minCoeff() >= 0.0);
      }
    }
  }
  SUBCASE("adjointness with A (x) I") {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
      const auto rho = random_mixed<double>({3, 2}, 4, rng);
      const ComplexMatrix a = ginibre<double>(3, 3, rng);
      const auto lhs = (tensor(a, ComplexMatrix::Identity(2, 2)) * rho.matrix()).trace();
      const auto rhs = (a * partial_trace(rho, {0}).matrix()).trace();
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
  SUBCASE("three factors and pure inputs") {
    Rng rng(6);
    const auto psi = random_pure<double>({2, 3, 2}, rng);
    const auto rho = psi.density();
    for (const std::vector<std::size_t>& keep : {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1}}) {
      CHECK(max_abs(partial_trace(psi, keep).matrix() - partial_trace(rho, keep).matrix()) < 1e-12);
    }
  }
  SUBCASE("invalid subsystem lists") {
    const auto rho = bell().density();
    CHECK_THROWS_AS(partial_trace(rho, {2}), Error);
    CHECK_THROWS_AS(partial_trace(rho, {}), Error);
  }
}

TEST_CASE("purify") {
  SUBCASE("pure input has a one-dimensional environment") {
    const auto psi = purify(bell().density());
    CHECK(psi.dims() == Dims{2, 2, 1});
  }
  SUBCASE("maximally mixed qubit") {
    const auto psi = purify(DensityMatrix::maximally_mixed(2));
    const auto sd = schmidt(psi, {0});
    REQUIRE(sd.coefficients.size() == 2);
    CHECK(sd.coefficients(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(sd.coefficients(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  }
  SUBCASE("round trip over dims and ranks") {
    Rng rng(7);
    for (std::size_t d = 2; d <= 6; ++d) {
      for (std::size_t r = 1; r <= d; ++r) {
        const auto rho = random_mixed<double>({d}, r, rng);
        const auto psi = purify(rho);
        CHECK(psi.dims().back() == r);
        CHECK(max_abs(partial_trace(psi, {0}).matrix() - rho.matrix()) < 1e-9);
      }
    }
    const auto rho = random_mixed<double>({2, 2}, 2, rng);
    const auto psi = purify(rho);
    CHECK(psi.dim() == 8);
    CHECK(max_abs(partial_trace(psi, {0, 1}).matrix() - rho.matrix()) < 1e-9);
  }
}

TEST_CASE("schmidt") {
  const double h = 1.0 / std::sqrt(2.0);
  SUBCASE("closed forms") {
    auto sd = schmidt(bell(), {0});
    CHECK(sd.coefficients.size() == 2);
    CHECK(sd.coefficients(0) == doctest::Approx(h));
    const auto product = PureState::from_vector(ket({h, h, 0, 0}), {2, 2});
    sd = schmidt(product, {0});
    CHECK(sd.coefficients.size() == 1);
    CHECK(sd.coefficients(0) == doctest::Approx(1.0));
    sd = schmidt(skewed_bell(), {0});
    CHECK(sd.coefficients(0) == doctest::Approx(std::sqrt(0.9)));
    CHECK(sd.coefficients(1) == doctest::Approx(std::sqrt(0.1)));
  }
  SUBCASE("reconstruction of Haar states") {
    Rng rng(8);
    for (int t = 0; t < 100; ++t) {
      const std::size_t da = 2 + t % 3, db = 2 + (t / 3) % 3;
      const auto psi = random_pure<double>({da, db}, rng);
      const auto sd = schmidt(psi, {0});
      CHECK((sd.reconstruct() - psi.amplitudes()).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(std::abs(sd.coefficients.squaredNorm() - 1.0) < 1e-10);
      const auto k = sd.coefficients.size();
      CHECK(max_abs(sd.left_basis.adjoint() * sd.left_basis - ComplexMatrix::Identity(k, k)) < 1e-10);
      CHECK(max_abs(sd.right_basis.adjoint() * sd.right_basis - ComplexMatrix::Identity(k, k)) < 1e-10);
      for (Eigen::Index i = 1; i < k; ++i) CHECK(sd.coefficients(i - 1) >= sd.coefficients(i));
    }
  }
  SUBCASE("cut through a tripartite state") {
    Rng rng(9);
    const auto psi = random_pure<double>({2, 2, 3}, rng);
    const auto sd = schmidt(psi, {0, 2});
    CHECK(sd.left_dims == Dims{2, 3});
    CHECK(sd.coefficients.size() <= 2);
    const RealVector ev = partial_trace(psi, {1}).spectrum();
    for (Eigen::Index i = 0; i < sd.coefficients.size(); ++i) {
      CHECK(std::abs(sd.coefficients(i) * sd.coefficients(i) - ev(i)) < 1e-10);
    }
  }
}

TEST_CASE("random states") {
  SUBCASE("determinism") {
    const auto a = random_pure<double>({2, 3}, 0), b = random_pure<double>({2, 3}, 0);
    CHECK((a.amplitudes().array() == b.amplitudes().array()).all());
    const auto c = random_mixed<double>({4}, 2, 0), d = random_mixed<double>({4}, 2, 0);
    CHECK((c.matrix().array() == d.matrix().array()).all());
    const auto v = std::get<PureState>(random_state<double>(RandomKind::HaarPure, {2, 3}, 0, 0));
    CHECK((v.amplitudes().array() == a.amplitudes().array()).all());
  }
  SUBCASE("ranks") {
    const auto pure = random_mixed<double>({3}, 1, 11);
    CHECK(std::abs(pure.spectrum()(0) - 1.0) < 1e-10);
    const RealVector ev = random_mixed<double>({4}, 2, 12).spectrum();
    CHECK((ev.array() > 1e-10).count() == 2);
    CHECK_THROWS_AS(random_mixed<double>({2}, 3, 0), Error);
    CHECK_THROWS_AS(random_mixed<double>({2}, 0, 0), Error);
  }
  SUBCASE("Haar states average to I/d, also after a fixed unitary") {
    Rng rng(13);
    const std::size_t d = 3, n = 20000;
    const ComplexMatrix u = random_unitary<double>(d, rng);
    ComplexMatrix avg = ComplexMatrix::Zero(d, d), rotated = ComplexMatrix::Zero(d, d);
    for (std::size_t t = 0; t < n; ++t) {
      const ComplexVector v = random_pure<double>({d}, rng).amplitudes();
      avg += v * v.adjoint();
      const ComplexVector w = u * v;
      rotated += w * w.adjoint();
    }
    CHECK(max_abs(avg / double(n) - ComplexMatrix::Identity(d, d) / double(d)) < 0.02);
    CHECK(max_abs(rotated / double(n) - ComplexMatrix::Identity(d, d) / double(d)) < 0.02);
  }
  SUBCASE("random unitaries are unitary") {
    Rng rng(14);
    const ComplexMatrix u = random_unitary<double>(5, rng);
    CHECK(max_abs(u.adjoint() * u - ComplexMatrix::Identity(5, 5)) < 1e-12);
  }
}

TEST_CASE("apply_channel") {
  Rng rng(15);
  const auto rho = random_mixed<double>({2}, 2, rng);
  SUBCASE("identity") { CHECK(max_abs(apply_channel(KrausChannel::identity(2), rho).matrix() - rho.matrix()) < 1e-15); }
  SUBCASE("dephasing |+>") {
    const double h = 1.0 / std::sqrt(2.0);
    const auto plus = PureState::from_vector(ket({h, h})).density();
    const auto out = apply_channel(KrausChannel::dephasing(2), plus);
    CHECK(max_abs(out.matrix() - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-12);
  }
  SUBCASE("depolarizing") {
    const auto out = apply_channel(KrausChannel::depolarizing(3), random_mixed<double>({3}, 1, rng));
    CHECK(max_abs(out.matrix() - ComplexMatrix::Identity(3, 3) / 3.0) < 1e-12);
  }
  SUBCASE("random channels give valid states") {
    for (int t = 0; t < 20; ++t) {
      const std::size_t in = 2 + t % 2, out = 2 + (t / 2) % 3;
      const auto ch = random_channel<double>(in, out, 1 + in, rng);
      const auto sigma = apply_channel(ch, random_mixed<double>({in}, 1 + t % in, rng));
      CHECK(sigma.dim() == out);
      CHECK(std::abs(sigma.matrix().trace() - 1.0) < 1e-9);
      CHECK(sigma.spectrum().minCoeff() >= 0.0);
    }
  }
  SUBCASE("incomplete Kraus sets") {
    CHECK_THROWS_AS(KrausChannel::from_operators({ComplexMatrix::Identity(2, 2) * 0.9}), Error);
    try {
      KrausChannel::from_operators({ComplexMatrix::Identity(2, 2) * 0.9});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::IncompleteKraus);
    }
  }
  SUBCASE("dimension mismatch") { CHECK_THROWS_AS(apply_channel(KrausChannel::identity(3), rho), Error); }
}

}  // namespace
