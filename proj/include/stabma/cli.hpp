#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "stabma/multistable.hpp"

namespace stabma::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInternal = 2;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "constant:A", "logistic[:lo,hi,rate[,center]]" or "table:t1:a1,t2:a2,...".
/// A logistic without a center is centred at n_points / 2.
AlphaFunction parse_alpha_fn(const std::string& spec, std::int64_t n_points);

}  // namespace stabma::cli
