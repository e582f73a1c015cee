#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "pkepler/oscillator.hpp"
#include "pkepler/twistor.hpp"

namespace testutil {

// Path of the running test binary; the pkepler CLI is its sibling in bin/.
extern std::string g_argv0;

inline std::filesystem::path cli_path() {
  return std::filesystem::path(g_argv0).parent_path() / "pkepler";
}

inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("pkepler_" + tag);
  std::filesystem::create_directories(dir);
  return dir;
}

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double gauss(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

inline pkepler::cplx gauss_c(Rng& rng) {
  return {gauss(rng), gauss(rng)};
}

inline pkepler::Spinor random_spinor(Rng& rng) {
  return {gauss_c(rng), gauss_c(rng)};
}

inline pkepler::TwistorVec random_twistor(Rng& rng, pkepler::Rep rep) {
  return {random_spinor(rng), random_spinor(rng), rep};
}

inline pkepler::Herm2 random_herm(Rng& rng) {
  return {gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
}

inline pkepler::Mat2 random_mat2(Rng& rng) {
  pkepler::Mat2 m;
  for (auto& v : m.e) v = gauss_c(rng);
  return m;
}

// Random group element by exponentiating a Lie algebra element of the
// respective defining relations.
inline pkepler::Mat4 random_group_element(Rng& rng, pkepler::Rep rep,
                                          double scale = 0.5) {
  using namespace pkepler;
  const cplx I{0.0, 1.0};
  Mat4 X;
  if (rep == Rep::diagonal) {
    // [[i a, b], [b^+, i d]] with a, d hermitian.
    const Mat2 a = herm_to_dense(random_herm(rng));
    const Mat2 d = herm_to_dense(random_herm(rng));
    const Mat2 b = random_mat2(rng);
    X = Mat4::from_blocks(I * a, b, b.adjoint(), I * d);
  } else {
    // [[a, b], [c, -a^+]] with b, c hermitian.
    const Mat2 a = random_mat2(rng);
    const Mat2 b = herm_to_dense(random_herm(rng));
    const Mat2 c = herm_to_dense(random_herm(rng));
    X = Mat4::from_blocks(a, b, c, cplx(-1.0) * a.adjoint());
  }
  return expm(cplx(scale, 0.0) * X);
}

inline pkepler::ComplexState random_complex_state(Rng& rng) {
  return {random_spinor(rng), random_spinor(rng)};
}

}  // namespace testutil
