#include "pairfluor/basis.hpp"

#include <stdexcept>

namespace pairfluor {

namespace {

std::array<Mat4, kMoments> build_operators() {
  const Mat4 a = lowering1();
  const Mat4 b = lowering2();
  const Mat4 ad = a.adjoint();
  const Mat4 bd = b.adjoint();
  return {a,          b,          ad,         bd,          ad * a,
          bd * b,     a * b,      ad * bd,    ad * b,      a * bd,
          ad * a * b, a * bd * b, ad * a * bd, ad * bd * b, ad * a * bd * b};
}

}  // namespace

Mat4 lowering1() {
  Mat4 m = Mat4::Zero();
  m(0, 1) = 1.0;
  m(2, 3) = 1.0;
  return m;
}

Mat4 lowering2() {
  Mat4 m = Mat4::Zero();
  m(0, 2) = 1.0;
  m(1, 3) = 1.0;
  return m;
}

const std::array<Mat4, kMoments>& moment_operators() {
  static const std::array<Mat4, kMoments> ops = build_operators();
  return ops;
}

Mat4 moment_operator(int k) {
  if (k < 0 || k >= kMoments) throw std::out_of_range("moment index out of range");
  return moment_operators()[static_cast<size_t>(k)];
}

}  // namespace pairfluor
