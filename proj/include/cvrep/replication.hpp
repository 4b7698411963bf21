#ifndef CVREP_REPLICATION_HPP
#define CVREP_REPLICATION_HPP

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace cvrep {

/// Event in (d+1)-dimensional Minkowski space, c = 1.
struct SpacetimePoint {
    double t = 0;
    std::vector<double> x;
};

struct CausalDiamond {
    SpacetimePoint y;  // request point, bottom of the diamond
    SpacetimePoint z;  // reveal point, top of the diamond
};

struct Configuration {
    SpacetimePoint s;
    std::vector<CausalDiamond> diamonds;

    int dim() const {
        return static_cast<int>(s.x.size());
    }
    int size() const {
        return static_cast<int>(diamonds.size());
    }
};

/// q - p is future-directed causal: dt >= |dx| (lightlike counts), with a small slack.
bool causal_leq(const SpacetimePoint &p, const SpacetimePoint &q);

/// Some point of one diamond reaches some point of the other. Since y_j is the
/// earliest and z_j the latest point of D_j, this holds iff y1 <= z2 or y2 <= z1.
bool diamonds_related(const CausalDiamond &a, const CausalDiamond &b);

struct Violation {
    enum class Kind { unreachable, unrelated };
    Kind kind;
    /// 1-based diamond labels; `second` is 0 for unreachable diamonds.
    int first;
    int second;
    std::string describe() const;
};

struct Validity {
    bool valid = true;
    std::vector<Violation> violations;
};

/// (a) s reaches every diamond, i.e. s <= z_j. (b) every pair of diamonds is related.
/// Throws std::invalid_argument on malformed input (mixed dimensions, < 2 diamonds,
/// a reveal point outside the future of its request point).
Validity config_valid(const Configuration &cfg);

struct GraphEdge {
    int from;  // 1-based
    int to;
};

struct CausalGraph {
    int vertices = 0;
    std::vector<GraphEdge> edges;
    int share_count() const {
        return static_cast<int>(edges.size());
    }
};

/// Complete graph; edge i->j when y_i <= z_j, smaller label first when both work.
CausalGraph causal_graph(const Configuration &cfg);

/// Distinct (i, j, k) with y_i <= z_j <= z_k, 1-based, if any.
std::optional<std::tuple<int, int, int>> find_chain(const Configuration &cfg);

struct CodeChoice {
    bool five_mode = false;
    int N = 0;
    int modes() const {
        return five_mode ? 5 : N * (N - 1) / 2;
    }
    std::string describe() const;
};

CodeChoice select_code(const Configuration &cfg);

/// Built-in configurations: "fig2a", "fig2b", "fig2c" (1+1 dimensions) and "fig4" (2+1).
Configuration builtin_configuration(const std::string &name);
Configuration fig4_configuration();

/// {"dim": d, "start": [t, x...], "diamonds": [{"y": [...], "z": [...]}]}
Configuration parse_configuration(const std::string &json_text);

}  // namespace cvrep

#endif
