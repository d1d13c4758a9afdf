#include "graphpencil/pencil.hpp"

#include <set>

namespace graphpencil {

namespace {

std::string monomial(int left_power, int right_power) {
  std::string out;
  if (left_power > 0) out += left_power == 1 ? "L" : "L" + std::to_string(left_power);
  if (right_power > 0) out += right_power == 1 ? "R" : "R" + std::to_string(right_power);
  return out.empty() ? "1" : out;
}

}  // namespace

std::string SymmetricBasis::label(std::size_t i) const {
  const auto [a, b] = exponents.at(i);
  if (a == b) return monomial(a, a);
  return monomial(b, a) + "+" + monomial(a, b);
}

SymmetricBasis build_symmetric_basis(int k) {
  if (k < 1) throw ValidationError("block count K must be at least 1");
  SymmetricBasis out;
  out.k = k;
  for (int b = 0; b < k; ++b) {
    for (int a = 0; a <= b; ++a) {
      out.exponents.emplace_back(a, b);
      GlyphCombination entry(BistarGlyph{a, 0, b, false, Rooting::BiRooted});
      if (a != b) entry += GlyphCombination(BistarGlyph{b, 0, a, false, Rooting::BiRooted});
      out.entries.push_back(entry);
    }
  }
  return out;
}

std::vector<BistarGlyph> required_glyphs(int k, bool two_hop) {
  std::set<BistarGlyph> needed;
  for (int j = 1; j < 2 * k; ++j) needed.insert(star(j).canonical());
  const SymmetricBasis basis = build_symmetric_basis(k);
  std::vector<GlyphCombination> columns(basis.entries.begin(), basis.entries.end());
  if (two_hop) {
    for (const auto& e : basis.entries) columns.push_back(glue(e, GlyphCombination(two_hop_glyph())));
  }
  const GlyphCombination bridge(bridge_glyph());
  for (const auto& row : basis.entries) {
    for (const auto& col : columns) {
      const GlyphCombination product = glue(row, col);
      for (const auto& c : {product, glue(product, bridge)}) {
        const GlyphCombination unrooted = c.with_rooting(Rooting::Unrooted);
        for (const auto& t : unrooted.terms()) needed.insert(t.glyph);
      }
    }
  }
  return {needed.begin(), needed.end()};
}

}  // namespace graphpencil
