#include "cvrep/replication.hpp"

#include <cmath>
#include <stdexcept>

#include "cvrep/tolerances.hpp"
#include "json.hpp"

namespace cvrep {

namespace {

void check_same_dim(const SpacetimePoint &p, const SpacetimePoint &q) {
    if (p.x.size() != q.x.size()) {
        throw std::invalid_argument("spacetime points have different spatial dimensions");
    }
}

SpacetimePoint point(double t, std::vector<double> x) {
    return {t, std::move(x)};
}

CausalDiamond diamond(SpacetimePoint y, SpacetimePoint z) {
    return {std::move(y), std::move(z)};
}

SpacetimePoint parse_point(const nlohmann::json &j, std::size_t dim, const std::string &where) {
    if (!j.is_array() || j.size() != dim + 1) {
        throw std::invalid_argument(where + " must be an array [t, x1.." + std::to_string(dim) + "]");
    }
    SpacetimePoint p;
    for (std::size_t i = 0; i <= dim; ++i) {
        if (!j[i].is_number()) {
            throw std::invalid_argument(where + " has a non-numeric coordinate");
        }
        double v = j[i].get<double>();
        if (!std::isfinite(v)) {
            throw std::invalid_argument(where + " has a non-finite coordinate");
        }
        if (i == 0) {
            p.t = v;
        } else {
            p.x.push_back(v);
        }
    }
    return p;
}

}  // namespace

bool causal_leq(const SpacetimePoint &p, const SpacetimePoint &q) {
    check_same_dim(p, q);
    double dx2 = 0;
    for (std::size_t i = 0; i < p.x.size(); ++i) {
        double d = q.x[i] - p.x[i];
        dx2 += d * d;
    }
    return q.t - p.t >= std::sqrt(dx2) - tol::lightcone;
}

bool diamonds_related(const CausalDiamond &a, const CausalDiamond &b) {
    return causal_leq(a.y, b.z) || causal_leq(b.y, a.z);
}

std::string Violation::describe() const {
    if (kind == Kind::unreachable) {
        return "diamond " + std::to_string(first) + " is not in the causal future of the start point";
    }
    return "diamonds (" + std::to_string(first) + "," + std::to_string(second) + ") are not causally related";
}

Validity config_valid(const Configuration &cfg) {
    if (cfg.size() < 2) {
        throw std::invalid_argument("a configuration needs at least two diamonds");
    }
    for (int j = 0; j < cfg.size(); ++j) {
        const auto &d = cfg.diamonds[j];
        check_same_dim(cfg.s, d.y);
        check_same_dim(cfg.s, d.z);
        if (!causal_leq(d.y, d.z)) {
            throw std::invalid_argument("diamond " + std::to_string(j + 1) + ": z is not in the future of y");
        }
    }
    Validity v;
    for (int j = 0; j < cfg.size(); ++j) {
        if (!causal_leq(cfg.s, cfg.diamonds[j].z)) {
            v.violations.push_back({Violation::Kind::unreachable, j + 1, 0});
        }
    }
    for (int i = 0; i < cfg.size(); ++i) {
        for (int j = i + 1; j < cfg.size(); ++j) {
            if (!diamonds_related(cfg.diamonds[i], cfg.diamonds[j])) {
                v.violations.push_back({Violation::Kind::unrelated, i + 1, j + 1});
            }
        }
    }
    v.valid = v.violations.empty();
    return v;
}

CausalGraph causal_graph(const Configuration &cfg) {
    CausalGraph g;
    g.vertices = cfg.size();
    for (int i = 0; i < cfg.size(); ++i) {
        for (int j = i + 1; j < cfg.size(); ++j) {
            const auto &a = cfg.diamonds[i];
            const auto &b = cfg.diamonds[j];
            if (causal_leq(a.y, b.z)) {
                g.edges.push_back({i + 1, j + 1});
            } else if (causal_leq(b.y, a.z)) {
                g.edges.push_back({j + 1, i + 1});
            } else {
                throw std::invalid_argument(
                    "diamonds " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are unrelated");
            }
        }
    }
    return g;
}

std::optional<std::tuple<int, int, int>> find_chain(const Configuration &cfg) {
    const int n = cfg.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i || !causal_leq(cfg.diamonds[i].y, cfg.diamonds[j].z)) {
                continue;
            }
            for (int k = 0; k < n; ++k) {
                if (k != i && k != j && causal_leq(cfg.diamonds[j].z, cfg.diamonds[k].z)) {
                    return std::tuple{i + 1, j + 1, k + 1};
                }
            }
        }
    }
    return std::nullopt;
}

std::string CodeChoice::describe() const {
    return five_mode ? "five_mode" : "general(" + std::to_string(N) + ")";
}

CodeChoice select_code(const Configuration &cfg) {
    CodeChoice c;
    c.N = cfg.size();
    c.five_mode = c.N == 4 && find_chain(cfg).has_value();
    return c;
}

Configuration fig4_configuration() {
    Configuration cfg;
    cfg.s = point(-1, {2, 2});
    cfg.diamonds = {
        diamond(point(0, {3.7, 4}), point(2.1, {4.075, 2})),
        diamond(point(0, {4, 0}), point(2.1, {2, 0})),
        diamond(point(0, {-0.15, 4}), point(4.2, {4, 4})),
        diamond(point(0, {0, 0}), point(4.2, {0.15, 4})),
    };
    return cfg;
}

Configuration builtin_configuration(const std::string &name) {
    Configuration cfg;
    if (name == "fig2a") {
        // Diamonds stacked in time, each in the future of the last.
        cfg.s = point(0, {0});
        cfg.diamonds = {
            diamond(point(1, {0}), point(2, {0.5})),
            diamond(point(3, {0.5}), point(4, {0})),
            diamond(point(5, {0}), point(6, {0.5})),
        };
    } else if (name == "fig2b") {
        // Side by side, tall enough that every pair overlaps causally.
        cfg.s = point(-1, {0});
        for (double x : {-1.0, 0.0, 1.0}) {
            cfg.diamonds.push_back(diamond(point(0, {x}), point(4, {x})));
        }
    } else if (name == "fig2c") {
        // Diamonds 2 and 3 are short and far apart.
        cfg.s = point(0, {0});
        cfg.diamonds = {
            diamond(point(1, {0}), point(2, {0})),
            diamond(point(6, {-3}), point(7, {-3})),
            diamond(point(6, {3}), point(7, {3})),
        };
    } else if (name == "fig4") {
        return fig4_configuration();
    } else {
        throw std::invalid_argument("unknown built-in configuration '" + name + "'");
    }
    return cfg;
}

Configuration parse_configuration(const std::string &json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("configuration is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("start") || !j.contains("diamonds")) {
        throw std::invalid_argument("configuration needs dim, start and diamonds");
    }
    if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1) {
        throw std::invalid_argument("dim must be a positive integer");
    }
    const auto dim = static_cast<std::size_t>(j["dim"].get<int>());
    Configuration cfg;
    cfg.s = parse_point(j["start"], dim, "start");
    if (!j["diamonds"].is_array()) {
        throw std::invalid_argument("diamonds must be an array");
    }
    int k = 0;
    for (const auto &d : j["diamonds"]) {
        ++k;
        if (!d.is_object() || !d.contains("y") || !d.contains("z")) {
            throw std::invalid_argument("diamond " + std::to_string(k) + " needs y and z");
        }
        cfg.diamonds.push_back(diamond(parse_point(d["y"], dim, "diamond " + std::to_string(k) + " y"),
                                       parse_point(d["z"], dim, "diamond " + std::to_string(k) + " z")));
    }
    return cfg;
}

}  // namespace cvrep
