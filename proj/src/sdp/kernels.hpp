// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Dense inner loops of the interior-point solver. The AVX2/FMA variants are
// picked at run time when the CPU supports them.

#pragma once

#include <cstddef>

namespace ncr::kernels {

double dot(const double* a, const double* b, std::size_t n);
/// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);

/// Name of the active implementation ("avx2" or "scalar").
const char* active();
/// Force the scalar path (tests compare both).
void force_scalar(bool on);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool compiled();
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace avx2

}  // namespace ncr::kernels
