#pragma once

// Row kernels for dense elimination over F_p. Every ISA variant must agree
// bit-for-bit with the scalar reference; tests/test_kernels.cpp checks this.
// Rows hold reduced residues in [0, p).

#include <cstddef>
#include <cstdint>
#include <span>

namespace ctv::kernels {

enum class Isa { scalar, avx2 };

struct RowKernels {
  Isa isa;
  const char* name;
  // Largest modulus the variant handles exactly.
  std::uint32_t max_modulus;
  // dst[i] = (dst[i] + c * src[i]) mod p; dst.size() == src.size(), c < p.
  void (*axpy)(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
               std::uint32_t p);
  // row[i] = (c * row[i]) mod p.
  void (*scale)(std::span<std::uint32_t> row, std::uint32_t c, std::uint32_t p);
};

const RowKernels& scalar();

// nullptr when the variant was not compiled in.
const RowKernels* avx2();

bool cpu_has_avx2();

// Best variant for this CPU and modulus. CTV_ISA=scalar in the environment
// pins the scalar path.
const RowKernels& select(std::uint32_t p);

}  // namespace ctv::kernels
