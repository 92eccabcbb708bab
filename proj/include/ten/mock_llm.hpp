#pragma once

#include <string>

#include "ten/gateway.hpp"

namespace ten::mock_llm {

// Deterministic offline completion: a pure function of the request and the
// completion index. Recognizes the toolkit's own prompt shapes — rationale
// requests get a well-formed four-section rationale, headline requests get a
// short headline carrying the rationale's final numeral — so an entirely
// offline pipeline run produces artifacts every downstream parser accepts.
//
// With temperature > 0 the completion varies with the index (including exact
// duplicates and an off-by-one numeral) to exercise dedup and preference
// splitting; at temperature 0 every index yields the same text.
std::string synthesize(const GenRequest& request, int completion_index);

}  // namespace ten::mock_llm
