#pragma once

#include "mzk/spectral.hpp"

// Thin FFTW wrapper. Plans are created once per shape under a lock and then
// executed concurrently on caller buffers of any alignment. Transforms are
// unnormalized; sign -1 is exp(-i...), +1 is exp(+i...).
namespace mzk::fft {

void transform_2d(cplx* data, int n0, int n1, int sign);

// Transforms `howmany` interleaved sequences of length n in place: element m
// of sequence h lives at data[m * howmany + h].
void transform_strided(cplx* data, int n, int howmany, int sign);

void transform_1d(cplx* data, int n, int sign);

}  // namespace mzk::fft
