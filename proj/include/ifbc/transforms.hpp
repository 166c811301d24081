#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ifbc {

using Complex = std::complex<double>;

/// Transforms that diagonalise the structured operators.
///
/// Every routine evaluates the matrix entries directly (O(n^2)) unless its
/// name says otherwise; the fast Fourier path exists for Periodic only.
namespace transforms {

/// y = Q^P x with [Q^P]_{ij} = exp(2 pi i (i-1)(j-1) / n) / sqrt(n). Unitary.
std::vector<Complex> dft(std::span<const Complex> x);
/// y = (Q^P)^{-1} x = conj(Q^P) x.
std::vector<Complex> idft(std::span<const Complex> x);

/// Same two products computed with an FFT (FFTW).
std::vector<Complex> dft_fast(std::span<const Complex> x);
std::vector<Complex> idft_fast(std::span<const Complex> x);

/// y = C x with C_{ij} = sqrt((2 - delta_{i1}) / n) cos((i-1)(2j-1) pi / (2n)).
/// Orthogonal; rows are the cosine eigenvectors of the Reflective algebra.
std::vector<double> dct3(std::span<const double> x);
/// y = C^T x, the inverse of dct3.
std::vector<double> dct3_transpose(std::span<const double> x);

/// y = S x with S_{ij} = sqrt(2/(m+1)) sin(i j pi / (m+1)), m = x.size().
/// Symmetric and orthogonal, hence self-inverse.
std::vector<double> dst1(std::span<const double> x);

/// sqrt(sum_{j<n} j^2), the ramp normaliser of the anti-reflective transform.
double art_eta(std::size_t n);

/// y = Q^AR c: ramp columns (n-1..0)/eta and (0..n-1)/eta around a
/// zero-bordered DST-I block. Not orthogonal. Requires n >= 3.
std::vector<double> art(std::span<const double> c);
/// c = (Q^AR)^{-1} y using the ramp structure and DST-I self-inversion.
std::vector<double> art_inverse(std::span<const double> y);

}  // namespace transforms
}  // namespace ifbc
