#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "penta/normalized.hpp"

namespace penta {

struct LoadResult {
  FSolution solution;
  std::optional<WeightSystem> weights;
};

// Text document, format_version "1": colors, sparse dims (N > 0 only),
// blocks with row-major [re, im] coordinate pairs, optional weights.
// Serialization is canonical: identical inputs give identical bytes.
std::string to_document_string(const FSolution& sol, const WeightSystem* weights);
LoadResult parse_document(const std::string& text);

void save_solution(const FSolution& sol, const WeightSystem* weights,
                   const std::filesystem::path& path);
LoadResult load_solution(const std::filesystem::path& path);

}  // namespace penta
