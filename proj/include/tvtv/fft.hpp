#pragma once

#include "tvtv/image.hpp"

namespace tvtv {

// Unitary 2D DFT, DC at (0,0):
//   F(k,l) = (1/sqrt(MN)) sum_{i,j} x(i,j) exp(-2*pi*i*(k i / M + l j / N))
ComplexImage fft2_unitary(const ComplexImage& img);

// Exact Hermitian adjoint/inverse of fft2_unitary (F is unitary and
// symmetric, so the inverse is computed as conj(F(conj(x)))).
ComplexImage ifft2_unitary(const ComplexImage& img);

}  // namespace tvtv
