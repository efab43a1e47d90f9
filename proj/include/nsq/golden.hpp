#pragma once

/// \file golden.hpp
/// Loaders for the frozen reference data under data/.
///
/// Matrices are stored sparsely as JSON
///   { "rows": R, "cols": C, "entries": [[i, j, "expr"], ...] }
/// with 1-based indices and entry expressions in the exact-scalar syntax of
/// expr.hpp; absent entries are zero.  Scalar tables are JSON objects
/// mapping names to expression strings.

#include <map>
#include <string>
#include <vector>

#include "nsq/matrix.hpp"
#include "nsq/scalar.hpp"

namespace nsq {

/// Root of the reference-data tree: $NSQ_DATA_DIR if set, else the
/// compiled-in default (the source tree's data/ directory).
std::string data_dir();

/// Load a sparse exact matrix from data_dir()/relpath.
Mat load_golden_matrix(const std::string& relpath, ExtPtr ctx = nullptr);

/// Load a name -> scalar table from data_dir()/relpath.
std::map<std::string, Scalar> load_golden_scalars(const std::string& relpath,
                                                  ExtPtr ctx = nullptr);

/// Load a name -> integer row vector table (JSON object mapping names to
/// arrays of integers) from data_dir()/relpath.
std::map<std::string, std::vector<Rat>> load_golden_int_vectors(
    const std::string& relpath);

}  // namespace nsq
