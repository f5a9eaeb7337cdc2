#pragma once

#include "lcs/lcs.hpp"

#include <string>
#include <vector>

namespace testing_support {

inline std::string data_path(const std::string& file) { return std::string(LCS_TEST_DATA_DIR) + "/" + file; }

inline const std::vector<lcs::CorpusEntry>& corpus() {
    static const std::vector<lcs::CorpusEntry> entries = lcs::read_corpus(data_path("corpus.txt"));
    return entries;
}

inline const lcs::CorpusEntry& entry(const std::string& name) {
    for (const auto& e : corpus())
        if (e.name == name) return e;
    throw lcs::InvalidArgument("no corpus entry named " + name);
}

inline lcs::LieAlgebra algebra(const std::string& eq, const lcs::Parameters& params = {}) {
    return lcs::parse_structure_equations({eq, params});
}

inline lcs::KForm form(const std::string& text, std::size_t dim, std::size_t degree, const lcs::Parameters& params = {}) {
    return lcs::parse_form(text, dim, degree, params);
}

/// The 4-dimensional structures listed with a Lee form and whose section is
/// identified by the presence of expect.kind (first table) or expect.n
/// (second table).
inline std::vector<const lcs::CorpusEntry*> first_table() {
    std::vector<const lcs::CorpusEntry*> out;
    for (const auto& e : corpus())
        if (e.expect.kind == lcs::Kind::Second && e.algebra().dim() == 4) out.push_back(&e);
    return out;
}

inline std::vector<const lcs::CorpusEntry*> second_table() {
    std::vector<const lcs::CorpusEntry*> out;
    for (const auto& e : corpus())
        if (e.expect.extension_dim) out.push_back(&e);
    return out;
}

inline std::vector<const lcs::CorpusEntry*> with_structure() {
    std::vector<const lcs::CorpusEntry*> out;
    for (const auto& e : corpus())
        if (e.has_structure()) out.push_back(&e);
    return out;
}

} // namespace testing_support
