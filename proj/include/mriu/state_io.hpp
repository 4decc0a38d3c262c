#pragma once

#include <filesystem>
#include <string>

#include "mriu/tensor.hpp"

namespace mriu {

/// State file: {"dims":[2,2,2],"coeffs":[[re,im],...]} with coeffs in
/// StateTensor storage order (last index fastest).
StateTensor state_from_json(const std::string& text, bool require_normalized = false);
std::string state_to_json(const StateTensor& c);

StateTensor read_state_file(const std::filesystem::path& path, bool require_normalized = false);
void write_state_file(const std::filesystem::path& path, const StateTensor& c);

}  // namespace mriu
