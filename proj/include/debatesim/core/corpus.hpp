#pragma once

#include <filesystem>
#include <vector>

#include "debatesim/core/types.hpp"

namespace debatesim {

// The debate propositions shipped with the harness, grouped by domain.
const std::vector<Topic>& bundled_topics();

// Reads a corpus file of the form {"topics": [{"id", "domain", "proposition"}]}.
// Throws std::runtime_error on unreadable or malformed files and
// InvalidConfig when the corpus violates its invariants.
std::vector<Topic> load_corpus(const std::filesystem::path& path);

// Ids unique, propositions non-empty, corpus non-empty.
void validate_corpus(const std::vector<Topic>& topics);

}  // namespace debatesim
