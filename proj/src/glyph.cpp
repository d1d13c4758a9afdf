#include "graphpencil/glyph.hpp"

#include "graphpencil/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace graphpencil {

const char* to_string(Rooting r) noexcept {
  switch (r) {
    case Rooting::Unrooted: return "unrooted";
    case Rooting::LeftRooted: return "left";
    case Rooting::BiRooted: return "birooted";
  }
  return "unknown";
}

BistarGlyph BistarGlyph::canonical() const {
  if (rooting == Rooting::Unrooted && right > left) return mirrored();
  return *this;
}

BistarGlyph star(int edges, Rooting rooting) {
  if (edges < 0) throw ValidationError("star edge count must be non-negative");
  if (edges == 0) return {0, 0, 0, false, rooting};
  return {edges - 1, 0, 0, true, rooting};
}

BistarGlyph bridge_glyph(Rooting rooting) { return {0, 0, 0, true, rooting}; }

BistarGlyph two_hop_glyph(Rooting rooting) { return {0, 1, 0, false, rooting}; }

BistarGlyph glue(const BistarGlyph& a, const BistarGlyph& b) {
  if (a.bridge && b.bridge) {
    throw GluingError("gluing " + format_glyph(a) + " with " + format_glyph(b) +
                      " would create a parallel edge between the roots");
  }
  return {a.left + b.left, a.mid + b.mid, a.right + b.right, a.bridge || b.bridge,
          Rooting::BiRooted};
}

namespace {

int parse_count(std::string_view digits, std::string_view token) {
  if (digits.empty()) return 1;
  int value = 0;
  const auto* end = digits.data() + digits.size();
  const auto [ptr, ec] = std::from_chars(digits.data(), end, value);
  if (ec != std::errc() || ptr != end || value < 0) {
    throw ParseError("invalid exponent in glyph token '" + std::string(token) + "'", 0);
  }
  return value;
}

}  // namespace

BistarGlyph parse_glyph(std::string_view text) {
  BistarGlyph g;
  bool seen[4] = {false, false, false, false};
  bool any = false;
  bool identity = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    const std::string_view token = text.substr(pos, end - pos);
    pos = end;
    any = true;
    if (token == "1") {
      identity = true;
      continue;
    }
    const char head = token.front();
    const std::string_view digits = token.substr(1);
    int slot = -1;
    switch (head) {
      case 'L': slot = 0; g.left = parse_count(digits, token); break;
      case 'C': slot = 1; g.mid = parse_count(digits, token); break;
      case 'R': slot = 2; g.right = parse_count(digits, token); break;
      case 'E':
        slot = 3;
        if (!digits.empty()) throw ParseError("bridge token 'E' takes no exponent", 0);
        g.bridge = true;
        break;
      default:
        throw ParseError("unknown glyph token '" + std::string(token) + "'", 0);
    }
    if (seen[slot]) throw ParseError("repeated glyph token '" + std::string(token) + "'", 0);
    seen[slot] = true;
  }
  if (!any) throw ParseError("empty glyph string (write \"1\" for the empty glyph)", 0);
  if (identity && (seen[0] || seen[1] || seen[2] || seen[3])) {
    throw ParseError("'1' cannot be combined with other glyph tokens", 0);
  }
  return g;
}

std::string format_glyph(const BistarGlyph& g) {
  std::ostringstream os;
  bool first = true;
  auto part = [&](char c, int n) {
    if (n == 0) return;
    if (!first) os << ' ';
    os << c << n;
    first = false;
  };
  part('L', g.left);
  part('C', g.mid);
  part('R', g.right);
  if (g.bridge) {
    if (!first) os << ' ';
    os << 'E';
    first = false;
  }
  if (first) os << '1';
  return os.str();
}

GlyphCombination::GlyphCombination(std::vector<GlyphTerm> terms) : terms_(std::move(terms)) {}

GlyphCombination GlyphCombination::simplified() const {
  std::vector<GlyphTerm> sorted = terms_;
  std::sort(sorted.begin(), sorted.end(),
            [](const GlyphTerm& a, const GlyphTerm& b) { return a.glyph < b.glyph; });
  std::vector<GlyphTerm> out;
  for (const auto& t : sorted) {
    if (!out.empty() && out.back().glyph == t.glyph) {
      out.back().coefficient += t.coefficient;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const GlyphTerm& t) { return t.coefficient == 0.0; });
  return GlyphCombination(std::move(out));
}

GlyphCombination GlyphCombination::with_rooting(Rooting r) const {
  std::vector<GlyphTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.coefficient, t.glyph.with_rooting(r).canonical()});
  return GlyphCombination(std::move(out)).simplified();
}

GlyphCombination& GlyphCombination::operator+=(const GlyphCombination& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  *this = simplified();
  return *this;
}

GlyphCombination operator*(double c, GlyphCombination a) {
  for (auto& t : a.terms_) t.coefficient *= c;
  return a.simplified();
}

GlyphCombination glue(const GlyphCombination& a, const GlyphCombination& b) {
  std::vector<GlyphTerm> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      out.push_back({x.coefficient * y.coefficient, glue(x.glyph, y.glyph)});
    }
  }
  return GlyphCombination(std::move(out)).simplified();
}

bool operator==(const GlyphCombination& a, const GlyphCombination& b) {
  const auto sa = a.simplified().terms_;
  const auto sb = b.simplified().terms_;
  if (sa.size() != sb.size()) return false;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i].glyph != sb[i].glyph || sa[i].coefficient != sb[i].coefficient) return false;
  }
  return true;
}

std::string format_combination(const GlyphCombination& c) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : c.terms()) {
    if (!first) os << " + ";
    if (t.coefficient != 1.0) os << t.coefficient << "*";
    os << "(" << format_glyph(t.glyph) << ")";
    first = false;
  }
  return os.str();
}

std::size_t BistarGlyphHash::operator()(const BistarGlyph& g) const noexcept {
  std::size_t h = static_cast<std::size_t>(g.left);
  h = h * 1000003u ^ static_cast<std::size_t>(g.mid);
  h = h * 1000003u ^ static_cast<std::size_t>(g.right);
  h = h * 1000003u ^ (g.bridge ? 1u : 0u);
  h = h * 1000003u ^ static_cast<std::size_t>(g.rooting);
  return h;
}

}  // namespace graphpencil
