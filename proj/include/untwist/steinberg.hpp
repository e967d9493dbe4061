#pragma once

// Twisted word combinatorics: tensor words whose k-th factor carries k twists,
// the rotation action on twist levels mod u, orbits, shift representatives and
// the search for representatives with prescribed trivial margins.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "untwist/errors.hpp"

namespace untwist {

// labels[k] is the factor sitting at twist level k; "1" denotes the trivial
// factor.  Canonical form never has trailing "1" labels.
struct SteinbergWord {
    std::vector<std::string> labels;

    SteinbergWord() = default;
    explicit SteinbergWord(std::vector<std::string> ls) : labels(std::move(ls)) {
        canonicalize();
    }

    void canonicalize() {
        for (auto& l : labels)
            require(!l.empty(), ErrorCode::domain, "empty factor label");
        while (!labels.empty() && labels.back() == "1") labels.pop_back();
    }

    std::size_t length() const { return labels.size(); }

    std::size_t nontrivial_count() const {
        std::size_t n = 0;
        for (const auto& l : labels) n += l != "1";
        return n;
    }

    std::size_t leading_trivial() const {
        std::size_t n = 0;
        while (n < labels.size() && labels[n] == "1") ++n;
        return n;
    }

    static SteinbergWord parse(const std::string& text) {
        std::vector<std::string> ls;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) ls.push_back(item);
        return SteinbergWord(std::move(ls));
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < labels.size(); ++i)
            s += (i ? "," : "") + labels[i];
        return s.empty() ? "1" : s;
    }

    bool operator==(const SteinbergWord& o) const { return labels == o.labels; }
};

// Apply e extra twists: every factor moves up e levels.
inline SteinbergWord twist(const SteinbergWord& w, std::size_t e) {
    std::vector<std::string> ls(e, "1");
    ls.insert(ls.end(), w.labels.begin(), w.labels.end());
    return SteinbergWord(std::move(ls));
}

// Orbit of w under the generator that raises every twist level by 1 mod u,
// listed in action order starting from w.  Its length divides u.
inline std::vector<SteinbergWord> orbit_mod_u(const SteinbergWord& w, std::size_t u) {
    require(u >= 1, ErrorCode::domain, "orbit_mod_u: u must be >= 1");
    require(w.length() <= u, ErrorCode::domain,
            "orbit_mod_u: word does not fit in a window of length u");
    std::vector<std::string> window(u, "1");
    for (std::size_t k = 0; k < w.labels.size(); ++k) window[k] = w.labels[k];
    std::vector<SteinbergWord> orbit;
    std::vector<std::string> cur = window;
    do {
        orbit.push_back(SteinbergWord(std::vector<std::string>(cur)));
        std::rotate(cur.rbegin(), cur.rbegin() + 1, cur.rend());  // level k -> k+1 mod u
    } while (!(cur == window));
    require(u % orbit.size() == 0, ErrorCode::internal, "orbit length must divide u");
    return orbit;
}

// An orbit representative written as a base word with its external twist
// (= the number of leading trivial levels) split off.
struct QShift {
    SteinbergWord base;
    std::size_t twist_level = 0;

    SteinbergWord full() const { return twist(base, twist_level); }
    bool operator==(const QShift& o) const {
        return base == o.base && twist_level == o.twist_level;
    }
};

inline std::vector<QShift> q_shifts(const SteinbergWord& w, std::size_t u) {
    std::vector<QShift> out;
    for (const auto& rep : orbit_mod_u(w, u)) {
        std::size_t e = rep.leading_trivial();
        std::vector<std::string> base(rep.labels.begin() +
                                          static_cast<std::ptrdiff_t>(e),
                                      rep.labels.end());
        out.push_back({SteinbergWord(std::move(base)), e});
    }
    return out;
}

// First orbit representative (in action order from w) whose window of length u
// has at least `head` leading and at least `tail` trailing trivial levels.
inline std::optional<SteinbergWord> find_good_shift(const SteinbergWord& w, std::size_t u,
                                                    std::size_t head, std::size_t tail) {
    for (const auto& rep : orbit_mod_u(w, u)) {
        std::size_t lead = rep.leading_trivial();
        std::size_t trail = u - rep.length();  // canonical form strips trailing 1s
        if (lead >= head && trail >= tail) return rep;
    }
    return std::nullopt;
}

}  // namespace untwist
