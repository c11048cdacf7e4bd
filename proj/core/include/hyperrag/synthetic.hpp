#pragma once

#include <cstdint>
#include <vector>

#include "hyperrag/corpus.hpp"
#include "hyperrag/labeling.hpp"

namespace hyperrag {

/// A generated hurricane-domain corpus with its gazetteer and queries whose
/// gold ids are every document holding all of the query's labels.
struct SyntheticDomain {
  Corpus corpus;
  Gazetteer gazetteer;
  std::vector<QueryRecord> queries;
};

SyntheticDomain make_hurricane_domain(std::size_t num_docs, std::size_t num_queries, std::uint64_t seed);

/// The built-in hurricane gazetteer used by make_hurricane_domain().
Gazetteer hurricane_gazetteer();

}  // namespace hyperrag
