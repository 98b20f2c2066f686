// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Data-parallel inner loops used by the greedy DPP update, k-center and
// k-means. Each kernel has a scalar reference and optional vector variants;
// the active variant is chosen once at startup from the host CPU features.

#include <cstddef>
#include <span>

namespace rddpp::simd {

enum class Backend { kScalar, kAvx2, kNeon };

const char* BackendName(Backend backend);

// Best backend the host supports (and the build contains).
Backend DetectBackend();
bool BackendAvailable(Backend backend);

// Backend used by the free functions below. Defaults to DetectBackend().
Backend ActiveBackend();
// Overrides dispatch. Throws if the backend is unavailable on this host.
void SetActiveBackend(Backend backend);

struct KernelTable {
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*squared_distance)(const double* x, const double* y, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
};

const KernelTable& Kernels(Backend backend);

namespace scalar {
double Dot(const double* x, const double* y, std::size_t n);
double SquaredDistance(const double* x, const double* y, std::size_t n);
void Axpy(double a, const double* x, double* y, std::size_t n);
}  // namespace scalar

#if defined(RDDPP_HAVE_AVX2)
namespace avx2 {
double Dot(const double* x, const double* y, std::size_t n);
double SquaredDistance(const double* x, const double* y, std::size_t n);
void Axpy(double a, const double* x, double* y, std::size_t n);
}  // namespace avx2
#endif

#if defined(RDDPP_HAVE_NEON)
namespace neon {
double Dot(const double* x, const double* y, std::size_t n);
double SquaredDistance(const double* x, const double* y, std::size_t n);
void Axpy(double a, const double* x, double* y, std::size_t n);
}  // namespace neon
#endif

double Dot(std::span<const double> x, std::span<const double> y);
double SquaredDistance(std::span<const double> x, std::span<const double> y);
void Axpy(double a, std::span<const double> x, std::span<double> y);

}  // namespace rddpp::simd
