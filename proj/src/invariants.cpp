#include "tf/invariants.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <sstream>

namespace tf {

std::string LaurentPoly::to_string() const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        long long c = it->second;
        int e = it->first;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        long long m = c < 0 ? -c : c;
        if (e == 0) {
            os << m;
        } else {
            if (m != 1) os << m;
            os << "q";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

size_t BigradedComplex::total_generators() const {
    size_t s = 0;
    for (auto& [j, levels] : basis)
        for (auto& gens : levels) s += gens.size();
    return s;
}

BigradedComplex build_complex(const MatchedGraph& g, Ring ring) {
    require_valid(g);
    if (ring == Ring::Z && !in_family_G(g).member)
        throw std::invalid_argument("Z-lift unavailable outside G");

    int n = g.matching_size();
    std::vector<ResolutionDiagram> diagrams(1u << n);
    for (uint32_t code = 0; code < (1u << n); ++code) diagrams[code] = resolve(g, State(code, n));

    BigradedComplex cx;
    cx.ring = ring;
    cx.n = n;

    // basis, states in lex order, labelings ascending (PLUS has bit 0)
    std::map<int, std::vector<std::vector<Generator>>> basis;
    std::map<std::pair<uint32_t, uint32_t>, int> index_in_block;  // (state code, labels) -> column
    for (uint32_t code = 0; code < (1u << n); ++code) {
        const auto& d = diagrams[code];
        int nc = d.circle_count();
        for (uint32_t lab = 0; lab < (1u << nc); ++lab) {
            Generator gen{State(code, n), lab, nc};
            auto& lv = basis[gen.gr_q()];
            if (lv.empty()) lv.resize(n + 1);
            index_in_block[{code, lab}] = (int)lv[gen.gr_h()].size();
            lv[gen.gr_h()].push_back(gen);
        }
    }
    cx.basis = std::move(basis);

    for (auto& [j, levels] : cx.basis) {
        auto& mats = cx.diff[j];
        mats.resize(n + 1);
        for (int i = 0; i < n; ++i) {
            int ii = i;
            mats[i] = IntMatrix((int)levels[ii + 1].size(), (int)levels[ii].size());
        }
        mats[n] = IntMatrix(0, (int)levels[n].size());
    }

    for (uint32_t code = 0; code < (1u << n); ++code) {
        State v(code, n);
        const auto& d = diagrams[code];
        for (int i = 0; i < n; ++i) {
            if (v.bit(i)) continue;
            State w = v.with_bit(i);
            auto st = surgery_step(d, diagrams[w.code], i);
            if (st.kind == ArcKind::Eta) continue;
            int sign = 1;
            if (ring == Ring::Z) {
                int ones_before = 0;
                for (int k = 0; k < i; ++k)
                    if (v.bit(k)) ++ones_before;
                sign = (ones_before % 2) ? -1 : 1;
            }
            int nc = d.circle_count();
            for (uint32_t lab = 0; lab < (1u << nc); ++lab) {
                Generator src{v, lab, nc};
                int j = src.gr_q();
                int col = index_in_block[{code, lab}];
                for (uint32_t out : st.image_labels(lab)) {
                    int row = index_in_block[{w.code, out}];
                    cx.diff[j][src.gr_h()].at(row, col) += sign;
                }
            }
        }
    }
    if (ring == Ring::Z2)
        for (auto& [j, mats] : cx.diff)
            for (auto& m : mats)
                for (auto& x : m.a) x &= 1;
    return cx;
}

bool differential_squares_to_zero(const BigradedComplex& c) {
    for (auto& [j, mats] : c.diff) {
        for (int i = 0; i + 1 <= c.n - 1; ++i) {
            const IntMatrix& A = mats[i];
            const IntMatrix& B = mats[i + 1];
            if (A.rows != B.cols) throw std::logic_error("block shape mismatch");
            for (int r = 0; r < B.rows; ++r)
                for (int cc = 0; cc < A.cols; ++cc) {
                    long long s = 0;
                    for (int k = 0; k < A.rows; ++k) s += (long long)B.at(r, k) * A.at(k, cc);
                    if (c.ring == Ring::Z2) s &= 1;
                    if (s != 0) return false;
                }
        }
    }
    return true;
}

namespace {

int rank_gf2(IntMatrix m) {
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.at(r, col) & 1) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int cc = 0; cc < m.cols; ++cc) std::swap(m.a[(size_t)pivot * m.cols + cc], m.a[(size_t)rank * m.cols + cc]);
        for (int r = 0; r < m.rows; ++r)
            if (r != rank && (m.at(r, col) & 1))
                for (int cc = col; cc < m.cols; ++cc) m.at(r, cc) ^= m.at(rank, cc);
        ++rank;
    }
    return rank;
}

// Smith-type diagonalization with exact arithmetic; returns the nonzero
// diagonal invariant factors d1 | d2 | ...
std::vector<mpz_class> smith_invariants(const IntMatrix& m0) {
    int rows = m0.rows, cols = m0.cols;
    std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m[r][c] = m0.at(r, c);

    std::vector<mpz_class> diag;
    int t = 0;
    while (t < rows && t < cols) {
        // pick the nonzero entry of smallest absolute value
        int pr = -1, pc = -1;
        mpz_class best;
        for (int r = t; r < rows; ++r)
            for (int c = t; c < cols; ++c)
                if (m[r][c] != 0) {
                    mpz_class a = abs(m[r][c]);
                    if (pr < 0 || a < best) {
                        best = a;
                        pr = r;
                        pc = c;
                    }
                }
        if (pr < 0) break;
        std::swap(m[t], m[pr]);
        for (int r = 0; r < rows; ++r) std::swap(m[r][t], m[r][pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int r = t + 1; r < rows; ++r) {
                if (m[r][t] == 0) continue;
                mpz_class q = m[r][t] / m[t][t];
                for (int c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
                if (m[r][t] != 0) {
                    std::swap(m[t], m[r]);
                    clean = false;
                }
            }
            for (int c = t + 1; c < cols; ++c) {
                if (m[t][c] == 0) continue;
                mpz_class q = m[t][c] / m[t][t];
                for (int r = t; r < rows; ++r) m[r][c] -= q * m[r][t];
                if (m[t][c] != 0) {
                    for (int r = 0; r < rows; ++r) std::swap(m[r][t], m[r][c]);
                    clean = false;
                }
            }
        }
        diag.push_back(abs(m[t][t]));
        ++t;
    }
    // enforce divisibility d1 | d2 | ...
    for (size_t a = 0; a < diag.size(); ++a)
        for (size_t b = a + 1; b < diag.size(); ++b) {
            mpz_class g = gcd(diag[a], diag[b]);
            mpz_class l = diag[a] / g * diag[b];
            diag[a] = g;
            diag[b] = l;
        }
    return diag;
}

}  // namespace

BigradedGroups homology(const BigradedComplex& c) {
    BigradedGroups out;
    out.ring = c.ring;
    for (auto& [j, mats] : c.diff) {
        const auto& levels = c.basis.at(j);
        for (int i = 0; i <= c.n; ++i) {
            int dim_i = (int)levels[i].size();
            if (dim_i == 0) continue;
            if (c.ring == Ring::Z2) {
                int r_out = i < c.n ? rank_gf2(mats[i]) : 0;
                int r_in = i > 0 ? rank_gf2(mats[i - 1]) : 0;
                int h = dim_i - r_out - r_in;
                if (h > 0) out.groups[{i, j}].dim = h;
            } else {
                auto inv_out = i < c.n ? smith_invariants(mats[i]) : std::vector<mpz_class>{};
                auto inv_in = i > 0 ? smith_invariants(mats[i - 1]) : std::vector<mpz_class>{};
                int r_out = (int)inv_out.size();
                int r_in = (int)inv_in.size();
                int free_rank = dim_i - r_out - r_in;
                std::vector<long long> torsion;
                for (const auto& d : inv_in)
                    if (d > 1) torsion.push_back(d.get_si());
                std::sort(torsion.begin(), torsion.end());
                if (free_rank > 0 || !torsion.empty()) {
                    auto& e = out.groups[{i, j}];
                    e.rank = free_rank;
                    e.torsion = torsion;
                }
            }
        }
    }
    return out;
}

std::string BigradedGroups::to_string() const {
    // sorted by (j desc, i asc)
    std::vector<std::pair<int, int>> keys;
    for (auto& [k, e] : groups) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [](auto a, auto b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::ostringstream os;
    for (auto& [i, j] : keys) {
        const auto& e = groups.at({i, j});
        os << "H[i=" << i << "][j=" << j << "]";
        if (ring == Ring::Z2) {
            os << " dim=" << e.dim;
        } else {
            os << " rank=" << e.rank;
            if (!e.torsion.empty()) {
                os << " torsion=";
                for (size_t k = 0; k < e.torsion.size(); ++k) os << (k ? "," : "") << e.torsion[k];
            }
        }
        os << "\n";
    }
    return os.str();
}

bool BigradedGroups::operator==(const BigradedGroups& o) const {
    if (ring != o.ring) return false;
    if (groups.size() != o.groups.size()) return false;
    for (auto& [k, e] : groups) {
        auto it = o.groups.find(k);
        if (it == o.groups.end()) return false;
        if (e.dim != it->second.dim || e.rank != it->second.rank || e.torsion != it->second.torsion) return false;
    }
    return true;
}

LaurentPoly two_factor_polynomial(const MatchedGraph& g) {
    require_valid(g);
    int n = g.matching_size();
    LaurentPoly p;
    for (uint32_t code = 0; code < (1u << n); ++code) {
        State v(code, n);
        int c = resolve(g, v).circle_count();
        long long sign = (v.weight() % 2) ? -1 : 1;
        // (q+q^-1)^c expanded with binomial coefficients
        std::vector<long long> binom(c + 1, 1);
        for (int k = 1; k <= c; ++k) binom[k] = binom[k - 1] * (c - k + 1) / k;
        for (int k = 0; k <= c; ++k) p.add(v.weight() + c - 2 * k, sign * binom[k]);
    }
    return p;
}

EulerReport euler_check(const MatchedGraph& g) {
    EulerReport rep{};
    auto poly = two_factor_polynomial(g);
    auto cx = build_complex(g, Ring::Z2);
    auto hom = homology(cx);

    LaurentPoly chi_c, chi_h;
    for (auto& [j, levels] : cx.basis)
        for (int i = 0; i <= cx.n; ++i)
            chi_c.add(j, ((i % 2) ? -1ll : 1ll) * (long long)levels[i].size());
    for (auto& [key, e] : hom.groups) chi_h.add(key.second, ((key.first % 2) ? -1ll : 1ll) * e.dim);

    rep.complex_matches_polynomial = (chi_c == poly);
    rep.homology_matches_complex = (chi_h == chi_c);
    rep.poly_at_one = poly.eval_at_one();
    rep.factor_count = two_factor_count(g);
    rep.count_matches = (rep.poly_at_one == rep.factor_count);
    return rep;
}

}  // namespace tf
