#pragma once

namespace helix::specfun {

/// Radial and angular Landau quantum numbers, both >= 0.
struct QuantumNumbers {
  int n = 0;
  int l = 0;
  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

void validate(const QuantumNumbers& qn);

/// Associated Laguerre polynomial L_n^l(x) by upward recurrence in n.
/// n = -1 is accepted and yields 0 so that L_{n-1}^{l+1} needs no special case.
double laguerre(int n, int l, double x);

/// d/dx L_n^l(x) = -L_{n-1}^{l+1}(x).
double laguerre_derivative(int n, int l, double x);

/// log of sqrt(B^{l+1} n! / (2 pi 2^l (n+l)!)).
double log_landau_norm(int n, int l, double B);

/// Normalisation of the transverse Landau state, evaluated in the log domain.
double landau_norm(int n, int l, double B);

}  // namespace helix::specfun
