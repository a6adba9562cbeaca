#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "copface/error.hpp"

namespace copface {

using Index = int;

/// Strictly increasing set of 0-based indices.
///
/// Textual forms (`to_string`, `parse_one_based`) use the 1-based numbering of
/// the mathematical notation [n] = {1, ..., n}.
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(std::initializer_list<Index> items) : items_(items) { normalize(); }
    explicit IndexSet(std::vector<Index> items) : items_(std::move(items)) { normalize(); }

    static IndexSet range(Index n) {
        std::vector<Index> v(static_cast<std::size_t>(std::max(n, 0)));
        for (Index i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
        return IndexSet(std::move(v));
    }

    /// Parses "1,2,3" (1-based) into {0,1,2}. Rejects duplicates.
    static IndexSet parse_one_based(const std::string& text) {
        std::vector<Index> out;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            auto b = tok.find_first_not_of(" \t");
            auto e = tok.find_last_not_of(" \t");
            if (b == std::string::npos) throw ParseError("empty entry in index list '" + text + "'");
            tok = tok.substr(b, e - b + 1);
            std::size_t used = 0;
            long v = 0;
            try {
                v = std::stol(tok, &used);
            } catch (const std::exception&) {
                throw ParseError("invalid index '" + tok + "' in '" + text + "'");
            }
            if (used != tok.size() || v < 1) throw ParseError("invalid index '" + tok + "' in '" + text + "'");
            out.push_back(static_cast<Index>(v - 1));
        }
        if (out.empty()) throw ParseError("empty index list");
        IndexSet s(out);
        if (s.size() != out.size()) throw ParseError("duplicate index in '" + text + "'");
        return s;
    }

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    Index operator[](std::size_t k) const { return items_[k]; }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }
    const std::vector<Index>& items() const { return items_; }

    bool contains(Index i) const { return std::binary_search(items_.begin(), items_.end(), i); }

    bool is_subset_of(const IndexSet& other) const {
        return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
    }
    bool is_proper_subset_of(const IndexSet& other) const {
        return size() < other.size() && is_subset_of(other);
    }

    IndexSet united(const IndexSet& other) const {
        std::vector<Index> out;
        std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                       std::back_inserter(out));
        return IndexSet(std::move(out));
    }
    IndexSet minus(const IndexSet& other) const {
        std::vector<Index> out;
        std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                            std::back_inserter(out));
        return IndexSet(std::move(out));
    }

    /// 1-based, e.g. "{1,2,3}".
    std::string to_string() const {
        std::string s = "{";
        for (std::size_t k = 0; k < items_.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(items_[k] + 1);
        }
        return s + "}";
    }

    std::vector<Index> one_based() const {
        std::vector<Index> v(items_);
        for (auto& x : v) ++x;
        return v;
    }

    friend bool operator==(const IndexSet&, const IndexSet&) = default;
    friend auto operator<=>(const IndexSet& a, const IndexSet& b) { return a.items_ <=> b.items_; }

private:
    void normalize() {
        std::sort(items_.begin(), items_.end());
        items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
    }

    std::vector<Index> items_;
};

} // namespace copface
