#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "splitnorm/estimator.hpp"
#include "splitnorm/multiplier.hpp"
#include "splitnorm/numeric_norm.hpp"
#include "splitnorm/profile.hpp"
#include "splitnorm/series.hpp"

namespace splitnorm::cli {

using json = nlohmann::ordered_json;

// Byte-stable serialization: insertion-ordered keys, floats at 17 significant digits,
// non-finite floats as null.
std::string dump(const json& j, int indent = 2);
std::string format_double(double x);

json to_json(const PiecewisePoly& f);
PiecewisePoly piecewise_from_json(const json& j);
json to_json(const Rat& r);
json to_json(const GRat& z);

json to_json(const NumericNorm& n);
json to_json(const MultConstants& c);
json to_json(const BoundReport& r);
json to_json(const PositiveKernelNorm& k);
json to_json(const LowerEstimate& e, bool include_test_function);

// Coefficient files: {"A": 2, "coeffs": {"-1": "1/2", "0": "1", "2": "(1+i)"}}.
CoeffSeq coeff_seq_from_json(const json& j);
json to_json(const CoeffSeq& c);

std::vector<std::complex<double>> samples_from_json(const json& j);

// Writes through a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace splitnorm::cli
