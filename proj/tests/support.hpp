#pragma once
// Fixtures and independent reference computations for the test suites.
// Oracles here use plain std::vector arithmetic, never the library's code paths.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bridgerank/metrics.hpp"
#include "bridgerank/random.hpp"
#include "bridgerank/relation_model.hpp"
#include "bridgerank/vote_matrix.hpp"

namespace testing {

using namespace bridgerank;

using Matrix = std::vector<std::vector<double>>;

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline VoteMatrix load_votes(const std::string& name) {
    std::istringstream in(slurp(fixture_path(name)));
    return read_vote_matrix_csv(in);
}

// F1: engagement vs bridging population. Group A = u1..u3, group B = u4..u6.
inline VoteMatrix f1() { return load_votes("f1_votes.csv"); }

inline Clustering f1_groups() {
    return clustering_from_labels({{PersonId("u1"), 0},
                                   {PersonId("u2"), 0},
                                   {PersonId("u3"), 0},
                                   {PersonId("u4"), 1},
                                   {PersonId("u5"), 1},
                                   {PersonId("u6"), 1}});
}

// F2: two blobs, 10 people voting +1 and 10 voting -1 on five items; each vote
// becomes a Pass with probability 0.1.
inline std::vector<VoteRecord> f2_records(uint64_t seed) {
    Rng rng(seed);
    std::vector<VoteRecord> records;
    for (int p = 0; p < 20; ++p) {
        const int side = p < 10 ? 1 : -1;
        char id[8];
        std::snprintf(id, sizeof(id), "p%02d", p + 1);
        for (int i = 1; i <= 5; ++i) {
            const int v = rng.uniform() < 0.1 ? 0 : side;
            records.push_back({PersonId(id), ItemId("item" + std::to_string(i)), v});
        }
    }
    return records;
}

inline bool f2_blob(const PersonId& p) { return std::stoi(p.str().substr(1)) <= 10; }

// F3: faction A (a1..a3) and B (b1..b3). X is approved by everyone, Y only by
// A, Z only by B.
inline VoteMatrix f3() {
    VoteMatrix m;
    for (const char* a : {"a1", "a2", "a3"}) {
        m.add(PersonId(a), ItemId("X"), Vote::Agree);
        m.add(PersonId(a), ItemId("Y"), Vote::Agree);
        m.add(PersonId(a), ItemId("Z"), Vote::Disagree);
    }
    for (const char* b : {"b1", "b2", "b3"}) {
        m.add(PersonId(b), ItemId("X"), Vote::Agree);
        m.add(PersonId(b), ItemId("Y"), Vote::Disagree);
        m.add(PersonId(b), ItemId("Z"), Vote::Agree);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Linear algebra oracles
// ---------------------------------------------------------------------------

// Cyclic Jacobi eigen-decomposition of a symmetric matrix. Eigenvalues come
// back descending; vectors[k] is the k-th eigenvector.
struct EigenDecomp {
    std::vector<double> values;
    Matrix vectors;
};

inline EigenDecomp jacobi_eigen(Matrix a) {
    const size_t n = a.size();
    Matrix v(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) v[i][i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-30) break;
        for (size_t p = 0; p < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (size_t k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return a[x][x] > a[y][y]; });
    EigenDecomp e;
    for (size_t k : order) {
        e.values.push_back(a[k][k]);
        std::vector<double> vec(n);
        for (size_t i = 0; i < n; ++i) vec[i] = v[i][k];
        e.vectors.push_back(vec);
    }
    return e;
}

// Gaussian elimination with partial pivoting.
inline std::vector<double> solve(Matrix a, std::vector<double> b) {
    const size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (size_t i = n; i-- > 0;) {
        double s = b[i];
        for (size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

// Dense vote matrix, people sorted by id (rows) × items sorted by id; missing = 0.
inline Matrix dense_votes(const VoteMatrix& m) {
    std::vector<PersonId> people = m.people();
    std::vector<ItemId> items = m.items();
    std::sort(people.begin(), people.end());
    std::sort(items.begin(), items.end());
    Matrix x(people.size(), std::vector<double>(items.size(), 0.0));
    for (size_t r = 0; r < people.size(); ++r)
        for (size_t c = 0; c < items.size(); ++c)
            if (auto v = m.vote(people[r], items[c])) x[r][c] = to_int(*v);
    return x;
}

// Covariance (divided by n) of column-centred data.
inline Matrix covariance(const Matrix& x) {
    const size_t n = x.size(), d = x[0].size();
    std::vector<double> mean(d, 0.0);
    for (const auto& row : x)
        for (size_t j = 0; j < d; ++j) mean[j] += row[j] / n;
    Matrix c(d, std::vector<double>(d, 0.0));
    for (const auto& row : x)
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) c[i][j] += (row[i] - mean[i]) * (row[j] - mean[j]) / n;
    return c;
}

// ---------------------------------------------------------------------------
// Clustering oracles
// ---------------------------------------------------------------------------

inline double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

// Mean silhouette straight from the definition.
inline double silhouette_oracle(const Matrix& pts, const std::vector<int>& labels) {
    const size_t n = pts.size();
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        std::map<int, std::pair<double, int>> by;
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            auto& e = by[labels[j]];
            e.first += distance(pts[i], pts[j]);
            e.second += 1;
        }
        if (by[labels[i]].second == 0) continue;  // singleton scores 0
        const double a = by[labels[i]].first / by[labels[i]].second;
        double b = INFINITY;
        for (const auto& [g, e] : by)
            if (g != labels[i] && e.second > 0) b = std::min(b, e.first / e.second);
        const double m = std::max(a, b);
        total += m > 0 ? (b - a) / m : 0.0;
    }
    return total / n;
}

// Best 2-way split by exhaustive enumeration of all assignments (min SSE).
inline std::vector<int> best_two_split(const Matrix& pts) {
    const size_t n = pts.size();
    double best = INFINITY;
    std::vector<int> best_labels;
    for (uint64_t mask = 1; mask < (uint64_t{1} << (n - 1)); ++mask) {
        std::vector<int> lab(n);
        for (size_t i = 0; i < n; ++i) lab[i] = (mask >> i) & 1;
        double sse = 0.0;
        for (int g = 0; g < 2; ++g) {
            std::vector<double> c(pts[0].size(), 0.0);
            int cnt = 0;
            for (size_t i = 0; i < n; ++i)
                if (lab[i] == g) {
                    for (size_t k = 0; k < c.size(); ++k) c[k] += pts[i][k];
                    ++cnt;
                }
            for (auto& x : c) x /= cnt;
            for (size_t i = 0; i < n; ++i)
                if (lab[i] == g) sse += std::pow(distance(pts[i], c), 2);
        }
        if (sse < best) {
            best = sse;
            best_labels = lab;
        }
    }
    return best_labels;
}

// Same partition up to renaming of labels.
template <typename A, typename B>
bool same_partition(const std::vector<A>& x, const std::vector<B>& y) {
    if (x.size() != y.size()) return false;
    std::map<A, B> fwd;
    std::map<B, A> back;
    for (size_t i = 0; i < x.size(); ++i) {
        auto [f, fi] = fwd.emplace(x[i], y[i]);
        auto [b, bi] = back.emplace(y[i], x[i]);
        if (f->second != y[i] || b->second != x[i]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Graph oracles
// ---------------------------------------------------------------------------

// Dense symmetric adjacency over positive edges, nodes sorted by id.
struct Dense {
    std::vector<PersonId> nodes;
    Matrix w;
    std::vector<int> group;
};

inline Dense dense_graph(const GraphModel& g, const Clustering& c) {
    Dense d;
    d.nodes = g.nodes();
    std::sort(d.nodes.begin(), d.nodes.end());
    const size_t n = d.nodes.size();
    d.w.assign(n, std::vector<double>(n, 0.0));
    auto idx = [&](const PersonId& p) {
        return static_cast<size_t>(std::lower_bound(d.nodes.begin(), d.nodes.end(), p) - d.nodes.begin());
    };
    for (const auto& e : g.edges()) {
        if (e.sign < 0) continue;
        d.w[idx(e.a)][idx(e.b)] += e.weight;
        d.w[idx(e.b)][idx(e.a)] += e.weight;
    }
    for (const auto& p : d.nodes) d.group.push_back(*c.group_of(p));
    return d;
}

// Q = (1/2M) sum_ij [A_ij - k_i k_j / 2M] delta(c_i, c_j)
inline double modularity_oracle(const Dense& d) {
    const size_t n = d.nodes.size();
    std::vector<double> k(n, 0.0);
    double two_m = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            k[i] += d.w[i][j];
            two_m += d.w[i][j];
        }
    double q = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (d.group[i] == d.group[j]) q += d.w[i][j] - k[i] * k[j] / two_m;
    return q / two_m;
}

inline double ei_oracle(const Dense& d) {
    double ext = 0.0, in = 0.0;
    for (size_t i = 0; i < d.nodes.size(); ++i)
        for (size_t j = i + 1; j < d.nodes.size(); ++j) (d.group[i] == d.group[j] ? in : ext) += d.w[i][j];
    return (ext - in) / (ext + in);
}

// Exact RWC from the t-step transition matrix. Walks start uniformly on the
// group's nodes with positive degree; zero-degree nodes hold the walker.
inline double rwc_oracle(const Dense& d, int steps, int gx, int gy) {
    const size_t n = d.nodes.size();
    Matrix p(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        double deg = 0.0;
        for (size_t j = 0; j < n; ++j) deg += d.w[i][j];
        if (deg == 0.0) {
            p[i][i] = 1.0;
        } else {
            for (size_t j = 0; j < n; ++j) p[i][j] = d.w[i][j] / deg;
        }
    }
    auto stay = [&](int g) {
        std::vector<double> dist(n, 0.0);
        int count = 0;
        for (size_t i = 0; i < n; ++i) {
            double deg = 0.0;
            for (size_t j = 0; j < n; ++j) deg += d.w[i][j];
            if (d.group[i] == g && deg > 0) {
                dist[i] = 1.0;
                ++count;
            }
        }
        for (auto& x : dist) x /= count;
        for (int s = 0; s < steps; ++s) {
            std::vector<double> next(n, 0.0);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) next[j] += dist[i] * p[i][j];
            dist = next;
        }
        double in = 0.0;
        for (size_t i = 0; i < n; ++i)
            if (d.group[i] == g) in += dist[i];
        return in;
    };
    const double a = stay(gx), b = stay(gy);
    return a * b - (1 - a) * (1 - b);
}

// Triangle balance by triple loop over signed edges.
inline double balance_oracle(const GraphModel& g) {
    std::map<std::pair<PersonId, PersonId>, int> sign;
    for (const auto& e : g.edges()) {
        sign[{e.a, e.b}] = e.sign;
        sign[{e.b, e.a}] = e.sign;
    }
    const auto& nodes = g.nodes();
    int balanced = 0, total = 0;
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j)
            for (size_t k = j + 1; k < nodes.size(); ++k) {
                auto ij = sign.find({nodes[i], nodes[j]}), jk = sign.find({nodes[j], nodes[k]}),
                     ik = sign.find({nodes[i], nodes[k]});
                if (ij == sign.end() || jk == sign.end() || ik == sign.end()) continue;
                ++total;
                if (ij->second * jk->second * ik->second > 0) ++balanced;
            }
    return total ? static_cast<double>(balanced) / total : NAN;
}

inline PersonId node(const std::string& s) { return PersonId(s); }

// Complete graph on the given names with unit weights.
inline GraphModel complete_graph(const std::vector<std::string>& names) {
    GraphModel g;
    for (const auto& n : names) g.add_node(PersonId(n));
    for (size_t i = 0; i < names.size(); ++i)
        for (size_t j = i + 1; j < names.size(); ++j) g.add_edge(PersonId(names[i]), PersonId(names[j]), 1.0);
    return g;
}

inline std::vector<std::string> names(const std::string& prefix, int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

inline Clustering labels_by_prefix(const GraphModel& g) {
    std::map<PersonId, GroupId> labels;
    for (const auto& n : g.nodes()) labels[n] = n.str()[0] == 'a' ? 0 : 1;
    return clustering_from_labels(labels);
}

}  // namespace testing
