#include "tvtv/fft.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>

namespace tvtv {
namespace {

// One FFT engine per thread; kissfft plans are cached per length inside it.
Eigen::FFT<double>& engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

}  // namespace

ComplexImage fft2_unitary(const ComplexImage& img) {
  const Index m = img.rows(), n = img.cols();
  ComplexImage out(m, n);
  auto& fft = engine();

  // Rows are contiguous in row-major storage.
  for (Index i = 0; i < m; ++i)
    fft.fwd(out.data() + i * n, img.data() + i * n, static_cast<int>(n));

  ComplexVector col(m), tcol(m);
  for (Index j = 0; j < n; ++j) {
    col = out.col(j);
    fft.fwd(tcol.data(), col.data(), static_cast<int>(m));
    out.col(j) = tcol;
  }

  out *= 1.0 / std::sqrt(static_cast<double>(m) * static_cast<double>(n));
  return out;
}

ComplexImage ifft2_unitary(const ComplexImage& img) {
  return fft2_unitary(img.conjugate()).conjugate();
}

}  // namespace tvtv
