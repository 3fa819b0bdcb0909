#pragma once

#include <Eigen/Dense>
#include <complex>

namespace photon {

using Complex = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Spinor = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3cd;
using Mat32 = Eigen::Matrix<Complex, 3, 2>;

inline constexpr Complex I1{0.0, 1.0};

// Pauli matrices in the real-valued (u, v) basis; sigma3 is the helicity.
inline Mat2 pauli1() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

inline Mat2 pauli2() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

inline Mat2 pauli3() {
  Mat2 m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

// Spin-1 matrices (Sigma_k)_ij = -i eps_ijk.
inline Mat3 spin_matrix(int k);

inline Mat3 spin_matrix(int k) {
  Mat3 m = Mat3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int e = 0;
      if (i != j && j != k && i != k) {
        // parity of the permutation (i, j, k)
        e = ((j - i + 3) % 3 == 1) ? 1 : -1;
      }
      if (e != 0) m(i, j) = Complex(0, -e);
    }
  return m;
}

// exp(i sigma3 phi) = cos(phi) I + i sin(phi) sigma3
inline Mat2 exp_i_sigma3(double phi) {
  Mat2 m = Mat2::Identity() * std::cos(phi);
  m += I1 * std::sin(phi) * pauli3();
  return m;
}

// Rotation of a real or complex 3-vector about unit axis w by angle phi.
template <class V>
V rotate_about(const V& x, const Vec3& w, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  V wx;
  wx << w.y() * x.z() - w.z() * x.y(), w.z() * x.x() - w.x() * x.z(),
      w.x() * x.y() - w.y() * x.x();
  return x * c + wx * s + w.cast<typename V::Scalar>() * (w.cast<typename V::Scalar>().dot(x)) * (1.0 - c);
}

inline double wrap_angle(double a) {
  // principal value in (-pi, pi]
  a = std::remainder(a, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

}  // namespace photon
