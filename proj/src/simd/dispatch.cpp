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

#include <atomic>
#include <string>

#include "rddpp/error.hpp"
#include "rddpp/simd/kernels.hpp"

namespace rddpp::simd {
namespace {

constexpr KernelTable kScalarTable{&scalar::Dot, &scalar::SquaredDistance,
                                   &scalar::Axpy};
#if defined(RDDPP_HAVE_AVX2)
constexpr KernelTable kAvx2Table{&avx2::Dot, &avx2::SquaredDistance, &avx2::Axpy};
#endif
#if defined(RDDPP_HAVE_NEON)
constexpr KernelTable kNeonTable{&neon::Dot, &neon::SquaredDistance, &neon::Axpy};
#endif

std::atomic<const KernelTable*>& ActiveTable() {
  static std::atomic<const KernelTable*> table{&Kernels(DetectBackend())};
  return table;
}

std::atomic<Backend>& ActiveBackendSlot() {
  static std::atomic<Backend> backend{DetectBackend()};
  return backend;
}

void CheckLengths(std::size_t x, std::size_t y) {
  if (x != y) {
    Fail(ErrorKind::kInvalidArgument, "vector lengths differ (" + std::to_string(x) + " vs " +
                                          std::to_string(y) + ")");
  }
}

}  // namespace

const char* BackendName(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

bool BackendAvailable(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(RDDPP_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::kNeon:
#if defined(RDDPP_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend DetectBackend() {
  if (BackendAvailable(Backend::kAvx2)) return Backend::kAvx2;
  if (BackendAvailable(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

const KernelTable& Kernels(Backend backend) {
  switch (backend) {
#if defined(RDDPP_HAVE_AVX2)
    case Backend::kAvx2:
      return kAvx2Table;
#endif
#if defined(RDDPP_HAVE_NEON)
    case Backend::kNeon:
      return kNeonTable;
#endif
    default:
      return kScalarTable;
  }
}

Backend ActiveBackend() { return ActiveBackendSlot().load(); }

void SetActiveBackend(Backend backend) {
  if (!BackendAvailable(backend)) {
    Fail(ErrorKind::kConfiguration,
         std::string("SIMD backend not available on this host: ") +
             BackendName(backend));
  }
  ActiveTable().store(&Kernels(backend));
  ActiveBackendSlot().store(backend);
}

double Dot(std::span<const double> x, std::span<const double> y) {
  CheckLengths(x.size(), y.size());
  return ActiveTable().load(std::memory_order_relaxed)->dot(x.data(), y.data(),
                                                           x.size());
}

double SquaredDistance(std::span<const double> x, std::span<const double> y) {
  CheckLengths(x.size(), y.size());
  return ActiveTable().load(std::memory_order_relaxed)
      ->squared_distance(x.data(), y.data(), x.size());
}

void Axpy(double a, std::span<const double> x, std::span<double> y) {
  CheckLengths(x.size(), y.size());
  ActiveTable().load(std::memory_order_relaxed)->axpy(a, x.data(), y.data(),
                                                     x.size());
}

}  // namespace rddpp::simd
