#pragma once

// Matrix Market reader/writer. Dense `array` and sparse `coordinate`
// formats, real/integer/complex fields, general/symmetric/hermitian
// symmetry. Values are written with 17 significant digits so a
// write-read round trip reproduces doubles bit-exactly.

#include "bse/types.hpp"

#include <string>

namespace bse::mm {

enum class Symmetry { General, Symmetric, Hermitian };

/// Writes a dense complex matrix in `array complex` format. Symmetric and
/// Hermitian symmetry store the lower triangle only; the caller is
/// responsible for the matrix actually having that symmetry.
void write_complex(const std::string& path, const Matrix& m,
                   Symmetry sym = Symmetry::General);

/// Writes a dense real matrix in `array real` format.
void write_real(const std::string& path, const RealMatrix& m,
                Symmetry sym = Symmetry::General);

/// Reads any supported Matrix Market file into a dense complex matrix
/// (real and integer fields are promoted). Throws ParseError with the
/// offending line number, or IoError if the file cannot be opened.
Matrix read_complex(const std::string& path);

/// Reads a file whose field is real or integer. Throws ParseError if the
/// stored field is complex.
RealMatrix read_real(const std::string& path);

}  // namespace bse::mm
