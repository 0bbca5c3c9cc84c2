#ifndef DPX_DOCFILE_HPP
#define DPX_DOCFILE_HPP

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dpx/dpe.hpp"
#include "dpx/expr.hpp"
#include "dpx/ncalg.hpp"
#include "dpx/scl.hpp"

namespace dpx {

// Input documents hold exactly one object:
//
//   [ring]            generators = z        scalars = rational | ratfunc
//   [bracket]         g1, g2 -> expr        (base Poisson bracket, dedata docs)
//   [dedata]          q = e, e   w = e, e, e   alphaIJ: g -> e   nuI: g -> e
//   [presentation]    p11 = e  p12 = e  tau = e, e, e
//   [family]          sigmaIJ: g -> e  deltaI: g -> e  baserel: g2 g1 -> e
//                     lambdas = r, r, ...   profile: addr -> 0|1
//
// '#' starts a comment. Missing alpha/nu/delta lines default to the zero
// image; missing sigma lines default to the identity. y1, y2 and t are
// reserved names.

struct Document {
    enum class Kind { DEData, Presentation, Family };
    Kind kind;
    PolyRingPtr ring;
    std::optional<DEData<Rational>> dedata;
    std::optional<NCPresentation<Rational>> presentation;
    std::optional<ParamFamily> family;
    std::map<std::string, Rational> profile;
};

namespace docdetail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

struct Line {
    int number;
    std::string text;
};

struct Section {
    std::string name;
    int line;
    std::vector<Line> lines;
};

inline std::vector<Section> split_sections(const std::string& text) {
    std::vector<Section> sections;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) line = line.substr(0, pos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("malformed section header", line_no, 1);
            sections.push_back({trim(line.substr(1, line.size() - 2)), line_no, {}});
            continue;
        }
        if (sections.empty())
            throw ParseError("content before the first section header", line_no, 1);
        sections.back().lines.push_back({line_no, line});
    }
    return sections;
}

// "key = value" split; returns false when '=' is absent.
inline bool key_value(const std::string& line, std::string& key, std::string& value) {
    auto pos = line.find('=');
    if (pos == std::string::npos) return false;
    key = trim(line.substr(0, pos));
    value = trim(line.substr(pos + 1));
    return true;
}

// "head: lhs -> rhs" split; returns false when the shape does not match.
inline bool arrow_entry(const std::string& line, std::string& head, std::string& lhs,
                        std::string& rhs) {
    auto colon = line.find(':');
    auto arrow = line.find("->");
    if (colon == std::string::npos || arrow == std::string::npos || arrow < colon) return false;
    head = trim(line.substr(0, colon));
    lhs = trim(line.substr(colon + 1, arrow - colon - 1));
    rhs = trim(line.substr(arrow + 2));
    return true;
}

inline std::size_t require_gen(const PolyRingPtr& ring, const std::string& name, int line) {
    auto idx = ring->index_of(name);
    if (!idx) throw ParseError("unknown generator '" + name + "'", line, 1);
    return *idx;
}

template <ScalarField K>
NCPresentation<K> parse_presentation(const Section& sec, const PolyRingPtr& ring,
                                     std::map<std::string, Rational>* profile,
                                     std::vector<Rational>* lambdas) {
    NCPresentation<K> p = NCPresentation<K>::trivial(ring);
    for (const auto& ln : sec.lines) {
        std::string key, value, head, lhs, rhs;
        if (arrow_entry(ln.text, head, lhs, rhs)) {
            if (head.rfind("sigma", 0) == 0 && head.size() == 7) {
                const int i = head[5] - '1', j = head[6] - '1';
                if (i < 0 || i > 1 || j < 0 || j > 1)
                    throw ParseError("unknown entry '" + head + "'", ln.number, 1);
                const std::size_t g = require_gen(ring, lhs, ln.number);
                p.sigma[i][j][g] = parse_poly<K>(rhs, ring, ln.number);
            } else if (head.rfind("delta", 0) == 0 && head.size() == 6) {
                const int i = head[5] - '1';
                if (i < 0 || i > 1) throw ParseError("unknown entry '" + head + "'", ln.number, 1);
                const std::size_t g = require_gen(ring, lhs, ln.number);
                p.delta[i][g] = parse_poly<K>(rhs, ring, ln.number);
            } else if (head == "baserel") {
                auto names = split(lhs, ' ');
                std::vector<std::string> parts;
                for (auto& n : names)
                    if (!n.empty()) parts.push_back(n);
                if (parts.size() != 2)
                    throw ParseError("baserel expects 'g2 g1 -> expr'", ln.number, 1);
                const std::size_t hi = require_gen(ring, parts[0], ln.number);
                const std::size_t lo = require_gen(ring, parts[1], ln.number);
                if (hi <= lo)
                    throw ParseError("baserel must rewrite a descending pair g2 g1 (g2 later in "
                                     "the generator order)",
                                     ln.number, 1);
                p.base_rels[{hi, lo}] = parse_poly<K>(rhs, ring, ln.number);
            } else if (head == "profile") {
                if (!profile)
                    throw ParseError("profile lines belong to [family] sections", ln.number, 1);
                (*profile)[lhs] = parse_scalar<Rational>(rhs, make_ring({}), ln.number);
            } else {
                throw ParseError("unknown entry '" + head + "'", ln.number, 1);
            }
            continue;
        }
        if (!key_value(ln.text, key, value))
            throw ParseError("expected 'key = value' or 'head: lhs -> rhs'", ln.number, 1);
        if (key == "p11")
            p.p11 = parse_scalar<K>(value, ring, ln.number);
        else if (key == "p12")
            p.p12 = parse_scalar<K>(value, ring, ln.number);
        else if (key == "tau") {
            auto parts = split(value, ',');
            if (parts.size() != 3) throw ParseError("tau expects three entries", ln.number, 1);
            p.tau1 = parse_poly<K>(parts[0], ring, ln.number);
            p.tau2 = parse_poly<K>(parts[1], ring, ln.number);
            p.tau0 = parse_poly<K>(parts[2], ring, ln.number);
        } else if (key == "lambdas") {
            if (!lambdas)
                throw ParseError("lambdas belong to [family] sections", ln.number, 1);
            for (const auto& part : split(value, ','))
                if (!part.empty())
                    lambdas->push_back(parse_scalar<Rational>(part, make_ring({}), ln.number));
        } else {
            throw ParseError("unknown key '" + key + "'", ln.number, 1);
        }
    }
    return p;
}

} // namespace docdetail

inline Document parse_document(const std::string& text) {
    using namespace docdetail;
    auto sections = split_sections(text);

    PolyRingPtr ring;
    bool ratfunc_scalars = false;
    bool ring_seen = false;

    // section pointers
    const Section* bracket_sec = nullptr;
    const Section* dedata_sec = nullptr;
    const Section* pres_sec = nullptr;
    const Section* family_sec = nullptr;

    for (const auto& sec : sections) {
        if (sec.name == "ring") {
            if (ring_seen) throw ParseError("duplicate [ring] section", sec.line, 1);
            ring_seen = true;
            std::vector<std::string> gens;
            for (const auto& ln : sec.lines) {
                std::string key, value;
                if (!key_value(ln.text, key, value))
                    throw ParseError("expected 'key = value'", ln.number, 1);
                if (key == "generators") {
                    for (const auto& g : split(value, ','))
                        if (!g.empty()) gens.push_back(g);
                } else if (key == "scalars") {
                    if (value == "rational")
                        ratfunc_scalars = false;
                    else if (value == "ratfunc")
                        ratfunc_scalars = true;
                    else
                        throw ParseError("scalars must be 'rational' or 'ratfunc'", ln.number, 1);
                } else {
                    throw ParseError("unknown key '" + key + "' in [ring]", ln.number, 1);
                }
            }
            for (const auto& g : gens)
                if (g == "y1" || g == "y2")
                    throw ParseError("'" + g + "' is reserved for the extension variables",
                                     sec.line, 1);
            ring = make_ring(gens);
        } else if (sec.name == "bracket") {
            bracket_sec = &sec;
        } else if (sec.name == "dedata") {
            dedata_sec = &sec;
        } else if (sec.name == "presentation") {
            pres_sec = &sec;
        } else if (sec.name == "family") {
            family_sec = &sec;
        } else {
            throw ParseError("unknown section [" + sec.name + "]", sec.line, 1);
        }
    }

    if (!ring_seen) throw ParseError("missing [ring] section", 1, 1);
    const int object_count = (dedata_sec ? 1 : 0) + (pres_sec ? 1 : 0) + (family_sec ? 1 : 0);
    if (object_count != 1)
        throw ParseError("a document holds exactly one of [dedata], [presentation], [family]", 1,
                         1);

    Document doc;
    doc.ring = ring;

    if (dedata_sec) {
        if (ratfunc_scalars)
            throw ParseError("[dedata] documents use rational scalars", dedata_sec->line, 1);
        doc.kind = Document::Kind::DEData;
        DEData<Rational> d = DEData<Rational>::zero(ring);
        if (bracket_sec) {
            for (const auto& ln : bracket_sec->lines) {
                auto arrow = ln.text.find("->");
                if (arrow == std::string::npos)
                    throw ParseError("expected 'g1, g2 -> expr'", ln.number, 1);
                auto gens = split(trim(ln.text.substr(0, arrow)), ',');
                if (gens.size() != 2)
                    throw ParseError("expected 'g1, g2 -> expr'", ln.number, 1);
                const std::size_t i = require_gen(ring, gens[0], ln.number);
                const std::size_t j = require_gen(ring, gens[1], ln.number);
                d.base.set_bracket(i, j,
                                   parse_poly<Rational>(trim(ln.text.substr(arrow + 2)), ring,
                                                        ln.number));
            }
        }
        for (const auto& ln : dedata_sec->lines) {
            std::string key, value, head, lhs, rhs;
            if (arrow_entry(ln.text, head, lhs, rhs)) {
                const std::size_t g = require_gen(ring, lhs, ln.number);
                if (head.rfind("alpha", 0) == 0 && head.size() == 7) {
                    const int i = head[5] - '1', j = head[6] - '1';
                    if (i < 0 || i > 1 || j < 0 || j > 1)
                        throw ParseError("unknown entry '" + head + "'", ln.number, 1);
                    auto imgs = d.alpha[i][j].images();
                    imgs[g] = parse_poly<Rational>(rhs, ring, ln.number);
                    d.alpha[i][j] = Derivation<Rational>(ring, std::move(imgs));
                } else if (head.rfind("nu", 0) == 0 && head.size() == 3) {
                    const int i = head[2] - '1';
                    if (i < 0 || i > 1)
                        throw ParseError("unknown entry '" + head + "'", ln.number, 1);
                    auto imgs = d.nu[i].images();
                    imgs[g] = parse_poly<Rational>(rhs, ring, ln.number);
                    d.nu[i] = Derivation<Rational>(ring, std::move(imgs));
                } else {
                    throw ParseError("unknown entry '" + head + "'", ln.number, 1);
                }
                continue;
            }
            if (!key_value(ln.text, key, value))
                throw ParseError("expected 'key = value' or 'head: g -> expr'", ln.number, 1);
            auto parts = split(value, ',');
            if (key == "q") {
                if (parts.size() != 2) throw ParseError("q expects two entries", ln.number, 1);
                d.q11 = parse_scalar<Rational>(parts[0], ring, ln.number);
                d.q12 = parse_scalar<Rational>(parts[1], ring, ln.number);
            } else if (key == "w") {
                if (parts.size() != 3) throw ParseError("w expects three entries", ln.number, 1);
                d.w1 = parse_poly<Rational>(parts[0], ring, ln.number);
                d.w2 = parse_poly<Rational>(parts[1], ring, ln.number);
                d.w0 = parse_poly<Rational>(parts[2], ring, ln.number);
            } else {
                throw ParseError("unknown key '" + key + "' in [dedata]", ln.number, 1);
            }
        }
        doc.dedata = std::move(d);
        return doc;
    }

    if (bracket_sec)
        throw ParseError("a [bracket] section only applies to [dedata] documents",
                         bracket_sec->line, 1);

    if (pres_sec) {
        if (ratfunc_scalars)
            throw ParseError("[presentation] documents use rational scalars; use [family] for "
                             "parametrized presentations",
                             pres_sec->line, 1);
        doc.kind = Document::Kind::Presentation;
        doc.presentation =
            docdetail::parse_presentation<Rational>(*pres_sec, ring, nullptr, nullptr);
        return doc;
    }

    if (!ratfunc_scalars)
        throw ParseError("[family] documents require 'scalars = ratfunc'", family_sec->line, 1);
    doc.kind = Document::Kind::Family;
    std::vector<Rational> lambdas;
    auto pres = std::make_shared<NCPresentation<RatFunc>>(
        docdetail::parse_presentation<RatFunc>(*family_sec, ring, &doc.profile, &lambdas));
    if (lambdas.empty())
        throw ParseError("[family] documents must register at least one lambda",
                         family_sec->line, 1);
    doc.family = make_family(std::move(pres), std::move(lambdas));
    return doc;
}

inline Document load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

// ---------------------------------------------------------------------------
// printing

inline std::string document_ring_header(const PolyRingPtr& ring, bool ratfunc_scalars) {
    std::string out = "[ring]\n";
    out += "generators = ";
    for (std::size_t i = 0; i < ring->arity(); ++i) {
        if (i) out += ", ";
        out += ring->gen_name(i);
    }
    out += "\n";
    out += std::string("scalars = ") + (ratfunc_scalars ? "ratfunc" : "rational") + "\n";
    return out;
}

inline std::string document_for_dedata(const DEData<Rational>& d) {
    std::string out = document_ring_header(d.ring, false);
    if (!d.base.table().empty()) {
        out += "\n[bracket]\n";
        for (const auto& [ij, entry] : d.base.table())
            out += d.ring->gen_name(ij.first) + ", " + d.ring->gen_name(ij.second) + " -> " +
                   entry.str() + "\n";
    }
    out += "\n[dedata]\n";
    out += "q = " + to_string(d.q11) + ", " + to_string(d.q12) + "\n";
    out += "w = " + d.w1.str() + ", " + d.w2.str() + ", " + d.w0.str() + "\n";
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t g = 0; g < d.ring->arity(); ++g)
                if (!d.alpha[i][j].image(g).is_zero())
                    out += "alpha" + std::to_string(i + 1) + std::to_string(j + 1) + ": " +
                           d.ring->gen_name(g) + " -> " + d.alpha[i][j].image(g).str() + "\n";
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t g = 0; g < d.ring->arity(); ++g)
            if (!d.nu[i].image(g).is_zero())
                out += "nu" + std::to_string(i + 1) + ": " + d.ring->gen_name(g) + " -> " +
                       d.nu[i].image(g).str() + "\n";
    return out;
}

template <ScalarField K>
std::string document_for_presentation(const NCPresentation<K>& p,
                                      const std::vector<Rational>* lambdas = nullptr) {
    const bool family = lambdas != nullptr;
    std::string out = document_ring_header(p.base, scalar_traits<K>::has_parameter);
    out += family ? "\n[family]\n" : "\n[presentation]\n";
    out += "p11 = " + scalar_traits<K>::str(p.p11) + "\n";
    out += "p12 = " + scalar_traits<K>::str(p.p12) + "\n";
    out += "tau = " + p.tau1.str() + ", " + p.tau2.str() + ", " + p.tau0.str() + "\n";
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t g = 0; g < p.base->arity(); ++g) {
                const Poly<K>& img = p.sigma[i][j][g];
                const bool is_default =
                    i == j ? img == Poly<K>::generator(p.base, g) : img.is_zero();
                if (!is_default)
                    out += "sigma" + std::to_string(i + 1) + std::to_string(j + 1) + ": " +
                           p.base->gen_name(g) + " -> " + img.str() + "\n";
            }
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t g = 0; g < p.base->arity(); ++g)
            if (!p.delta[i][g].is_zero())
                out += "delta" + std::to_string(i + 1) + ": " + p.base->gen_name(g) + " -> " +
                       p.delta[i][g].str() + "\n";
    for (const auto& [pair, rel] : p.base_rels)
        out += "baserel: " + p.base->gen_name(pair.first) + " " + p.base->gen_name(pair.second) +
               " -> " + rel.str() + "\n";
    if (family) {
        out += "lambdas = ";
        for (std::size_t i = 0; i < lambdas->size(); ++i) {
            if (i) out += ", ";
            out += to_string((*lambdas)[i]);
        }
        out += "\n";
    }
    return out;
}

inline std::string document_for_family(const ParamFamily& f) {
    return document_for_presentation<RatFunc>(*f.pres, &f.lambdas);
}

/// Parse a '*'-separated word like "y2*y1*x" into presentation symbols.
template <ScalarField K>
Word parse_word(const NCPresentation<K>& pres, const std::string& text) {
    Word w;
    for (const auto& part : docdetail::split(text, '*')) {
        if (part.empty()) throw DomainError("empty symbol in word '" + text + "'");
        auto sym = pres.symbol_of(part);
        if (!sym) throw DomainError("unknown symbol '" + part + "' in word");
        w.push_back(*sym);
    }
    if (w.empty()) throw DomainError("empty word");
    return w;
}

} // namespace dpx

#endif
