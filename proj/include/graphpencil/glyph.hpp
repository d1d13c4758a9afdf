#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace graphpencil {

enum class Rooting { Unrooted, LeftRooted, BiRooted };

const char* to_string(Rooting r) noexcept;

/// A member of the bistar family: two centre vertices with `left` pendant
/// edges on the left centre, `right` pendant edges on the right centre,
/// `mid` two-hop paths between the centres and an optional direct `bridge`
/// edge. Stars are (j-1, 0, 0, bridge); the empty glyph is (0, 0, 0, no bridge).
struct BistarGlyph {
  int left = 0;
  int mid = 0;
  int right = 0;
  bool bridge = false;
  Rooting rooting = Rooting::Unrooted;

  int vertex_count() const { return 2 + left + mid + right; }
  int edge_count() const { return left + right + 2 * mid + (bridge ? 1 : 0); }

  /// Swaps the roles of the two centres.
  BistarGlyph mirrored() const { return {right, mid, left, bridge, rooting}; }

  /// Unrooted glyphs are isomorphic to their mirror; canonical form has left >= right.
  BistarGlyph canonical() const;

  BistarGlyph with_rooting(Rooting r) const { return {left, mid, right, bridge, r}; }

  auto operator<=>(const BistarGlyph&) const = default;
};

/// Star with j edges; star(0) is the edgeless glyph.
BistarGlyph star(int edges, Rooting rooting = Rooting::Unrooted);
BistarGlyph bridge_glyph(Rooting rooting = Rooting::BiRooted);
BistarGlyph two_hop_glyph(Rooting rooting = Rooting::BiRooted);

/// Gluing of birooted glyphs: disjoint union with both pairs of roots merged.
/// Adds the (left, mid, right) tuples; two bridges would create a parallel
/// edge and raise GluingError.
BistarGlyph glue(const BistarGlyph& a, const BistarGlyph& b);

/// Text form: whitespace separated tokens Lℓ, Cc, Rr and E, each at most
/// once, in any order. A bare letter means exponent 1, omitted parts are 0,
/// and "1" is the empty glyph. Parsed glyphs are unrooted.
BistarGlyph parse_glyph(std::string_view text);

/// Inverse of parse_glyph, e.g. "L2 C1 E"; the empty glyph prints as "1".
std::string format_glyph(const BistarGlyph& g);

struct GlyphTerm {
  double coefficient = 0.0;
  BistarGlyph glyph;
};

/// Formal linear combination of glyphs. Evaluation of any density is
/// linear over the terms.
class GlyphCombination {
 public:
  GlyphCombination() = default;
  GlyphCombination(const BistarGlyph& g) : terms_{{1.0, g}} {}  // NOLINT: implicit by intent
  explicit GlyphCombination(std::vector<GlyphTerm> terms);

  const std::vector<GlyphTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Merges equal glyphs and drops zero coefficients; terms end up sorted.
  GlyphCombination simplified() const;

  /// Applies a rooting to every term; unrooting also canonicalizes.
  GlyphCombination with_rooting(Rooting r) const;

  GlyphCombination& operator+=(const GlyphCombination& other);
  friend GlyphCombination operator+(GlyphCombination a, const GlyphCombination& b) {
    a += b;
    return a;
  }
  friend GlyphCombination operator*(double c, GlyphCombination a);

  /// Bilinear extension of glue().
  friend GlyphCombination glue(const GlyphCombination& a, const GlyphCombination& b);

  friend bool operator==(const GlyphCombination& a, const GlyphCombination& b);

 private:
  std::vector<GlyphTerm> terms_;
};

std::string format_combination(const GlyphCombination& c);

struct BistarGlyphHash {
  std::size_t operator()(const BistarGlyph& g) const noexcept;
};

}  // namespace graphpencil
