#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "entanglia/channels.hpp"

namespace entanglia::cli {

using json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parsed MatrixFile: {"m": .., "n": .., "dims": [..], "re": [[..]], "im": [[..]]}.
// One-dimensional re/im arrays denote vectors and are stored as a single column.
struct MatrixFile {
  CMat mat;
  std::optional<int> m;
  std::optional<int> n;
  std::vector<int> dims;
  bool is_vector = false;
};

MatrixFile parse_matrix_file(const json& j);
MatrixFile parse_matrix_text(const std::string& text);
json matrix_json(const CMat& A);
json vector_json(const CVec& v);
json matrix_file_json(const CMat& A, std::optional<int> m, std::optional<int> n);
CMat matrix_from_json(const json& j);
CVec vector_from_json(const json& j);

std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_string(std::string_view bytes);

// Serializes with every floating-point number printed to 17 significant digits.
std::string dump_json(const json& j, int indent = 2);

}  // namespace entanglia::cli
