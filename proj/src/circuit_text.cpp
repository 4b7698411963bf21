#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "cvrep/circuit.hpp"
#include "overloaded.hpp"

namespace cvrep {

namespace {

std::string num(double v) {
    if (v == 0) {
        v = 0;  // drop the sign of -0
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string quad(Quadrature q) {
    return q == Quadrature::x ? "x" : "p";
}

double parse_number(const std::string &s) {
    auto parse_plain = [&](const std::string &part) {
        double v = 0;
        const char *first = part.data();
        const char *last = part.data() + part.size();
        if (first != last && *first == '+') {
            ++first;
        }
        auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last) {
            throw std::invalid_argument("bad number '" + s + "'");
        }
        return v;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        return parse_plain(s);
    }
    double den = parse_plain(s.substr(slash + 1));
    if (den == 0) {
        throw std::invalid_argument("zero denominator in '" + s + "'");
    }
    return parse_plain(s.substr(0, slash)) / den;
}

int parse_int(const std::string &s) {
    int v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad mode label '" + s + "'");
    }
    return v;
}

Quadrature parse_quad(const std::string &s) {
    if (s == "x") {
        return Quadrature::x;
    }
    if (s == "p") {
        return Quadrature::p;
    }
    throw std::invalid_argument("quadrature must be x or p, got '" + s + "'");
}

struct Fields {
    std::map<std::string, std::string> kv;
    int line;

    const std::string &get(const std::string &key) const {
        auto it = kv.find(key);
        if (it == kv.end()) {
            throw std::invalid_argument("line " + std::to_string(line) + ": missing field '" + key + "'");
        }
        return it->second;
    }
    int mode(const std::string &key) const {
        return parse_int(get(key));
    }
    double number(const std::string &key) const {
        return parse_number(get(key));
    }
};

Op parse_op(const std::string &name, const Fields &f) {
    if (name == "QND") {
        return Qnd{f.mode("c"), f.mode("t"), f.number("gain")};
    }
    if (name == "BSPM") {
        return BeamSplitterPM{f.mode("a"), f.mode("b")};
    }
    if (name == "BS") {
        return BeamSplitter{f.mode("a"), f.mode("b"), f.number("angle")};
    }
    if (name == "SQZ") {
        return SqueezeFactor{f.mode("mode"), f.number("factor")};
    }
    if (name == "TMS") {
        return TwoModeSqueeze{f.mode("a"), f.mode("b"), f.number("r")};
    }
    if (name == "PHASE") {
        return PhaseShift{f.mode("mode"), f.number("phi")};
    }
    if (name == "FT") {
        return Fourier{f.mode("mode")};
    }
    if (name == "IFT") {
        return InverseFourier{f.mode("mode")};
    }
    if (name == "PI") {
        return Pi{f.mode("mode")};
    }
    if (name == "SWAP") {
        return Swap{f.mode("a"), f.mode("b")};
    }
    if (name == "DISP") {
        return Displace{f.mode("mode"), {f.number("re"), f.number("im")}};
    }
    if (name == "MEAS") {
        return Measure{f.mode("mode"), parse_quad(f.get("basis")), f.get("reg")};
    }
    if (name == "FF") {
        return FeedforwardDisplace{f.get("reg"), f.mode("target"), parse_quad(f.get("quad")), f.number("gain")};
    }
    if (name == "DISCARD") {
        return Discard{f.mode("mode")};
    }
    throw std::invalid_argument("line " + std::to_string(f.line) + ": unknown op '" + name + "'");
}

}  // namespace

std::string to_text(const Op &op) {
    return std::visit(
        overloaded{
            [](const Qnd &g) {
                return "QND c=" + std::to_string(g.control) + " t=" + std::to_string(g.target) + " gain=" + num(g.gain);
            },
            [](const BeamSplitterPM &g) { return "BSPM a=" + std::to_string(g.a) + " b=" + std::to_string(g.b); },
            [](const BeamSplitter &g) {
                return "BS a=" + std::to_string(g.a) + " b=" + std::to_string(g.b) + " angle=" + num(g.angle);
            },
            [](const SqueezeFactor &g) { return "SQZ mode=" + std::to_string(g.mode) + " factor=" + num(g.factor); },
            [](const TwoModeSqueeze &g) {
                return "TMS a=" + std::to_string(g.a) + " b=" + std::to_string(g.b) + " r=" + num(g.r);
            },
            [](const PhaseShift &g) { return "PHASE mode=" + std::to_string(g.mode) + " phi=" + num(g.phi); },
            [](const Fourier &g) { return "FT mode=" + std::to_string(g.mode); },
            [](const InverseFourier &g) { return "IFT mode=" + std::to_string(g.mode); },
            [](const Pi &g) { return "PI mode=" + std::to_string(g.mode); },
            [](const Swap &g) { return "SWAP a=" + std::to_string(g.a) + " b=" + std::to_string(g.b); },
            [](const Displace &g) {
                return "DISP mode=" + std::to_string(g.mode) + " re=" + num(g.alpha.real()) +
                       " im=" + num(g.alpha.imag());
            },
            [](const Measure &g) {
                return "MEAS mode=" + std::to_string(g.mode) + " basis=" + quad(g.basis) + " reg=" + g.reg;
            },
            [](const FeedforwardDisplace &g) {
                return "FF reg=" + g.reg + " target=" + std::to_string(g.target) + " quad=" + quad(g.quad) +
                       " gain=" + num(g.gain);
            },
            [](const Discard &g) { return "DISCARD mode=" + std::to_string(g.mode); },
        },
        op);
}

std::string to_text(const Circuit &circuit) {
    std::string out = "MODES";
    for (int w : circuit.wires) {
        out += " " + std::to_string(w);
    }
    out += "\n";
    for (const auto &op : circuit.ops) {
        out += to_text(op) + "\n";
    }
    return out;
}

Circuit parse_circuit(const std::string &text) {
    Circuit circuit;
    bool have_header = false;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream words(line);
        std::string name;
        if (!(words >> name)) {
            continue;
        }
        if (name == "MODES") {
            if (have_header) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": repeated MODES header");
            }
            std::string w;
            while (words >> w) {
                circuit.wires.push_back(parse_int(w));
            }
            have_header = true;
            continue;
        }
        if (!have_header) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected MODES header first");
        }
        Fields fields{{}, line_no};
        std::string token;
        while (words >> token) {
            auto eq = token.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == token.size()) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key=value, got '" +
                                            token + "'");
            }
            fields.kv[token.substr(0, eq)] = token.substr(eq + 1);
        }
        circuit.ops.push_back(parse_op(name, fields));
    }
    if (!have_header) {
        throw std::invalid_argument("circuit text has no MODES header");
    }
    circuit.validate();
    return circuit;
}

}  // namespace cvrep
