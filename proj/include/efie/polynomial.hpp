#pragma once

#include <vector>

#include "efie/mesh.hpp"

namespace efie {

// Bivariate polynomial sum c_ab u^a v^b with a + b <= degree.
class Poly2 {
 public:
  Poly2() : Poly2(0) {}
  explicit Poly2(int degree);

  static Poly2 constant(double c);
  static Poly2 u();
  static Poly2 v();
  // Affine function c0 + cu u + cv v.
  static Poly2 affine(double c0, double cu, double cv);

  int degree() const { return degree_; }
  double coeff(int a, int b) const;
  double& coeff(int a, int b);

  double operator()(const Vec2& x) const;
  Poly2 du() const;
  Poly2 dv() const;
  // Integral over the reference triangle.
  double integral() const;

  Poly2& operator+=(const Poly2& other);
  Poly2& operator*=(double s);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a += (-1.0) * b; }
  friend Poly2 operator*(double s, Poly2 p) { return p *= s; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);

 private:
  static int index(int a, int b) { return (a + b) * (a + b + 1) / 2 + b; }
  int degree_;
  std::vector<double> c_;
};

// Integral of u^a v^b over the reference triangle: a! b! / (a + b + 2)!.
double reference_monomial_integral(int a, int b);

// Orthonormal basis (L2 on the reference triangle) of polynomials of degree
// <= degree, by Gram-Schmidt on monomials ordered by total degree.
std::vector<Poly2> orthonormal_polynomials(int degree);

// Silvester polynomial R_i(n, x) = prod_{k<i} (n x - k) / i!, as a polynomial
// of the affine argument x.
Poly2 silvester(int n, int i, const Poly2& x);
// Shifted variant: R_{i-1}(n, x - 1/n) for i >= 1, and 1 for i = 0.
Poly2 shifted_silvester(int n, int i, const Poly2& x);

// Barycentric coordinates (1 - u - v, u, v) as polynomials.
Poly2 barycentric(int i);

}  // namespace efie
