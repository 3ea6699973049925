#pragma once

// Perfect binary Hamming codes of length n = 2^t - 1, as vertex sets of Q_n.
// Membership is the zero-syndrome test: XOR of (i+1) over the set bit
// positions i. A nonzero syndrome s names the unique bit (s-1) whose flip
// lands in the code, which gives unique domination directly.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridsat/core.hpp"

namespace gridsat {

inline int hamming_length(int t) {
    if (t < 1 || t > 6) throw std::invalid_argument("need 1 <= t <= 6 (word fits 63 bits)");
    return (1 << t) - 1;
}

inline std::uint32_t hamming_syndrome(std::uint64_t word, int t) {
    int n = hamming_length(t);
    std::uint32_t s = 0;
    for (int i = 0; i < n; ++i)
        if ((word >> i) & 1) s ^= static_cast<std::uint32_t>(i + 1);
    return s;
}

inline bool hamming_contains(std::uint64_t word, int t) { return hamming_syndrome(word, t) == 0; }

// For a word outside the code, its unique code neighbor in Q_n.
inline std::uint64_t hamming_code_neighbor(std::uint64_t word, int t) {
    std::uint32_t s = hamming_syndrome(word, t);
    if (s == 0) throw std::invalid_argument("word is already a codeword");
    return word ^ (static_cast<std::uint64_t>(1) << (s - 1));
}

struct HammingCode {
    int t;
    std::vector<Vertex> members;  // sorted vertex ids of Q_{2^t-1}

    int length() const { return hamming_length(t); }
};

// Materialized member list; t <= 4 keeps the 2^n scan cheap (32768 words at
// t=4). Larger t still works through the predicate above.
inline HammingCode hamming_code(int t) {
    hamming_length(t);
    if (t > 4) throw std::invalid_argument("member list materialization capped at t = 4");
    int n = hamming_length(t);
    HammingCode code{t, {}};
    for (std::uint64_t w = 0; w < (static_cast<std::uint64_t>(1) << n); ++w)
        if (hamming_contains(w, t)) code.members.push_back(w);
    return code;
}

// Exhaustive perfect-domination check: members are pairwise non-adjacent and
// every non-member has exactly one member neighbor.
inline bool verify_perfect_code(const HammingCode& code) {
    int n = code.length();
    std::uint64_t total = static_cast<std::uint64_t>(1) << n;
    std::vector<char> is_member(total, 0);
    for (Vertex v : code.members) {
        if (v >= total) return false;
        is_member[v] = 1;
    }
    for (std::uint64_t w = 0; w < total; ++w) {
        int dominating = 0;
        for (int b = 0; b < n; ++b)
            if (is_member[w ^ (static_cast<std::uint64_t>(1) << b)]) ++dominating;
        if (is_member[w] ? dominating != 0 : dominating != 1) return false;
    }
    return true;
}

// cache format: "t <t>" then one member id per line, ascending
inline void save_hamming_code(const std::filesystem::path& file, const HammingCode& code) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "t " << code.t << '\n';
    for (Vertex v : code.members) out << v << '\n';
}

inline HammingCode load_hamming_code(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::string kw;
    HammingCode code;
    if (!(in >> kw >> code.t) || kw != "t") throw std::runtime_error("bad code cache header");
    Vertex v;
    while (in >> v) code.members.push_back(v);
    return code;
}

}  // namespace gridsat
