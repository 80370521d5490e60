#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace zblock {

/// A permutation of {0, ..., degree-1}, stored as its image table.
///
/// Composition reads left to right: (a.then(b))(x) = b(a(x)). The cycle
/// parser/printer uses 1-based points, matching the group-file format.
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<char> seen(images_.size(), 0);
        for (int img : images_) {
            if (img < 0 || img >= static_cast<int>(images_.size()) || seen[img])
                throw ParseError("permutation image table is not a bijection");
            seen[img] = 1;
        }
    }

    static Permutation identity(int degree) {
        std::vector<int> im(degree);
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }

    /// Parses disjoint-or-not cycle notation like "(1 2 3)(4 5)". Non-disjoint
    /// cycles are composed left to right. Points are 1-based.
    static Permutation from_cycles(const std::string& text, int degree) {
        Permutation result = identity(degree);
        size_t pos = 0;
        auto skip_ws = [&] {
            while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == ',')) ++pos;
        };
        skip_ws();
        if (pos == text.size()) throw ParseError("empty cycle expression");
        while (pos < text.size()) {
            skip_ws();
            if (pos == text.size()) break;
            if (text[pos] != '(') throw ParseError("malformed cycle: expected '(' in \"" + text + "\"");
            ++pos;
            std::vector<int> cycle;
            while (true) {
                skip_ws();
                if (pos == text.size()) throw ParseError("malformed cycle: unclosed '(' in \"" + text + "\"");
                if (text[pos] == ')') {
                    ++pos;
                    break;
                }
                if (!std::isdigit(static_cast<unsigned char>(text[pos])))
                    throw ParseError("malformed cycle: unexpected character in \"" + text + "\"");
                int value = 0;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                    value = value * 10 + (text[pos] - '0');
                    ++pos;
                }
                if (value < 1 || value > degree)
                    throw ParseError("cycle point " + std::to_string(value) + " out of range for degree " +
                                     std::to_string(degree));
                cycle.push_back(value - 1);
            }
            if (cycle.empty()) continue;
            std::vector<char> seen(degree, 0);
            for (int pt : cycle) {
                if (seen[pt]) throw ParseError("malformed cycle: repeated point in one cycle");
                seen[pt] = 1;
            }
            Permutation c = identity(degree);
            for (size_t i = 0; i < cycle.size(); ++i)
                c.images_[cycle[i]] = cycle[(i + 1) % cycle.size()];
            result = result.then(c);
        }
        return result;
    }

    int degree() const { return static_cast<int>(images_.size()); }

    int operator()(int point) const { return images_[point]; }

    /// Apply *this first, then `other`.
    Permutation then(const Permutation& other) const {
        if (degree() != other.degree()) throw Error("degree mismatch in permutation product");
        Permutation r;
        r.images_.resize(images_.size());
        for (size_t i = 0; i < images_.size(); ++i) r.images_[i] = other.images_[images_[i]];
        return r;
    }

    Permutation inverse() const {
        Permutation r;
        r.images_.resize(images_.size());
        for (size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<int>(i);
        return r;
    }

    bool is_identity() const {
        for (size_t i = 0; i < images_.size(); ++i)
            if (images_[i] != static_cast<int>(i)) return false;
        return true;
    }

    long long order() const {
        long long ord = 1;
        std::vector<char> seen(images_.size(), 0);
        for (size_t start = 0; start < images_.size(); ++start) {
            if (seen[start]) continue;
            long long len = 0;
            size_t pt = start;
            while (!seen[pt]) {
                seen[pt] = 1;
                pt = images_[pt];
                ++len;
            }
            ord = std::lcm(ord, len);
        }
        return ord;
    }

    std::string to_cycles() const {
        std::string out;
        std::vector<char> seen(images_.size(), 0);
        for (size_t start = 0; start < images_.size(); ++start) {
            if (seen[start] || images_[start] == static_cast<int>(start)) continue;
            out += '(';
            size_t pt = start;
            bool first = true;
            while (!seen[pt]) {
                seen[pt] = 1;
                if (!first) out += ' ';
                out += std::to_string(pt + 1);
                first = false;
                pt = images_[pt];
            }
            out += ')';
        }
        if (out.empty()) out = "()";
        return out;
    }

    const std::vector<int>& images() const { return images_; }

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

struct PermHash {
    size_t operator()(const Permutation& p) const {
        size_t h = 1469598103934665603ull;
        for (int v : p.images()) {
            h ^= static_cast<size_t>(v) + 0x9e3779b9;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace zblock
