#pragma once
// The weighted Cauchy product, its restrictions to high-support subspaces,
// inversion, powers, and the one-point character of the resulting algebra.
//
// Coefficient n of f<>g is sum_{k=0}^n delta_n/(delta_k delta_{n-k})
// f(k) g(n-k); with delta == 1 this is the ordinary Cauchy product and
// with delta_n = n! the binomial (discrete Duhamel) product. Summation
// order is fixed (k ascending) so outputs are reproducible bit-for-bit;
// commutativity is therefore a tolerance property, not a bitwise one.

#include "wcp/series.hpp"

namespace wcp {

// f <> g truncated at cfg.degree_cap. Inputs must share that cap.
FormalSeries diamond(const FormalSeries& f, const FormalSeries& g, const SpaceConfig& cfg);

// Restricted product on series supported on degrees >= i:
// coefficient n = sum_{k=i}^n delta_n/(delta_k delta_{n-k+i}) f(k) g(n-k+i).
// Throws SupportError if either input has a nonzero coefficient below i.
FormalSeries diamond_i(const FormalSeries& f, const FormalSeries& g, std::size_t i,
                       const SpaceConfig& cfg);

// Unity of the restricted product: delta_i z^i (the constant 1 for i = 0).
FormalSeries unity(std::size_t i, const WeightSequence& delta, std::size_t degree_cap);

// n-fold product power; the 0th power is the unity.
FormalSeries diamond_power(const FormalSeries& f, std::size_t n, const SpaceConfig& cfg);

// Inverse with respect to <>; requires f(0) != 0 (throws NotInvertible
// otherwise). Triangular recursion, exact in exact arithmetic.
FormalSeries invert(const FormalSeries& f, const SpaceConfig& cfg);

// Inverse with respect to the restricted product: g supported >= i with
// f <>_i g = delta_i z^i. Requires support >= i and f(i) != 0.
FormalSeries invert_i(const FormalSeries& f, std::size_t i, const SpaceConfig& cfg);

// The algebra's only character: f -> f(0).
Complex gelfand(const FormalSeries& f);

// True iff lambda lies in the spectrum of f, i.e. lambda == f(0) exactly.
// For lambda != f(0) the inversion of f - lambda is run as a witness; a
// witness failure throws InternalError (it would indicate a kernel bug).
bool spectrum_membership(const FormalSeries& f, Complex lambda, const SpaceConfig& cfg);

}  // namespace wcp
