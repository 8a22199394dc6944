#pragma once

#include "tf/plane_graph.hpp"
#include "tf/resolution.hpp"

#include <map>
#include <string>
#include <vector>

namespace tf {

enum class Ring : uint8_t { Z2, Z };

// Finitely supported Laurent polynomial in q with integer coefficients.
struct LaurentPoly {
    std::map<int, long long> coeffs;  // exponent -> coefficient, zeros dropped

    void add(int exp, long long c) {
        auto it = coeffs.find(exp);
        if (it == coeffs.end()) {
            if (c != 0) coeffs[exp] = c;
        } else {
            it->second += c;
            if (it->second == 0) coeffs.erase(it);
        }
    }
    long long coeff(int exp) const {
        auto it = coeffs.find(exp);
        return it == coeffs.end() ? 0 : it->second;
    }
    long long eval_at_one() const {
        long long s = 0;
        for (auto& [e, c] : coeffs) s += c;
        return s;
    }
    bool operator==(const LaurentPoly& o) const { return coeffs == o.coeffs; }
    std::string to_string() const;
};

// Generator of the chain complex: a state together with a labeling of the
// circles of its resolution diagram. Bit c of `labels` set means circle c
// (in diagram discovery order) carries x_-.
struct Generator {
    State v;
    uint32_t labels;
    int n_circles;

    int gr_h() const { return v.weight(); }
    int gr_q() const { return v.weight() + n_circles - 2 * __builtin_popcount(labels); }
    std::string label_string() const {
        std::string s;
        for (int c = 0; c < n_circles; ++c) s += (labels >> c) & 1 ? '-' : '+';
        return s;
    }
    std::string id() const { return v.to_string() + ":" + label_string(); }
};

struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<int> a;  // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0) {}
    int& at(int r, int c) { return a[(size_t)r * cols + c]; }
    int at(int r, int c) const { return a[(size_t)r * cols + c]; }
};

struct BigradedComplex {
    Ring ring;
    int n;  // |M|
    // per quantum grading j: basis[j][i] lists generators of C^{i,j};
    // diff[j][i] is the matrix of C^{i,j} -> C^{i+1,j}
    std::map<int, std::vector<std::vector<Generator>>> basis;
    std::map<int, std::vector<IntMatrix>> diff;

    int dim(int i, int j) const {
        auto it = basis.find(j);
        if (it == basis.end() || i < 0 || i > n) return 0;
        return (int)it->second[i].size();
    }
    size_t total_generators() const;
};

// Builds the bigraded complex. Over Z requires membership in the family G
// (throws std::invalid_argument "Z-lift unavailable outside G" otherwise);
// nonzero entries then carry the cube sign (-1)^{#{k<i : v_k=1}}.
BigradedComplex build_complex(const MatchedGraph& g, Ring ring);

struct GroupEntry {
    int dim = 0;                  // Z2 dimension
    int rank = 0;                 // Z free rank
    std::vector<long long> torsion;  // Z torsion orders > 1
};

struct BigradedGroups {
    Ring ring;
    std::map<std::pair<int, int>, GroupEntry> groups;  // (i,j) -> entry, zero groups omitted
    std::string to_string() const;                     // sorted by (j desc, i asc)
    bool operator==(const BigradedGroups& o) const;
};

BigradedGroups homology(const BigradedComplex& c);

// State sum  sum_v (-1)^{|v|} q^{|v|} (q+q^-1)^{c(v)}.
LaurentPoly two_factor_polynomial(const MatchedGraph& g);

struct EulerReport {
    bool complex_matches_polynomial;  // per-j Euler characteristic of C equals the polynomial
    bool homology_matches_complex;    // per-j Euler characteristic of H equals that of C
    bool count_matches;               // polynomial(1) equals two_factor_count
    long long poly_at_one;
    long long factor_count;
    bool all() const { return complex_matches_polynomial && homology_matches_complex && count_matches; }
};

EulerReport euler_check(const MatchedGraph& g);

// d . d as matrices, entrywise zero check per quantum block.
bool differential_squares_to_zero(const BigradedComplex& c);

}  // namespace tf
