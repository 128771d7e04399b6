#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fitsgeo/error.hpp"
#include "fitsgeo/geometry.hpp"

namespace fitsgeo {

enum class Sign { Negative, Positive };

struct RegionExpr;

struct SenseRef {
  int surface_id;
  Sign sign;
};
struct Intersection {
  std::vector<RegionExpr> terms;
};
struct Union {
  std::vector<RegionExpr> terms;
};
struct Complement {
  std::shared_ptr<const RegionExpr> inner;
};

/// Boolean combination of surface senses. Immutable value type; complements
/// share their subtree.
struct RegionExpr {
  std::variant<SenseRef, Intersection, Union, Complement> node;

  RegionExpr(SenseRef r) : node(r) {}
  RegionExpr(Intersection i) : node(std::move(i)) {}
  RegionExpr(Union u) : node(std::move(u)) {}
  RegionExpr(Complement c) : node(std::move(c)) {}
};

/// Structural equality (deep through complements).
bool operator==(const RegionExpr& a, const RegionExpr& b);

// Builders mirroring the surface-sense operators.
RegionExpr sense_neg(const Surface& s);
RegionExpr sense_pos(const Surface& s);
RegionExpr intersect(std::vector<RegionExpr> terms);
RegionExpr unite(std::vector<RegionExpr> terms);
RegionExpr complement(RegionExpr inner);

/// Flattens nested same-operator nodes and unwraps single-term lists.
RegionExpr canonicalize(const RegionExpr& e);

/// Error raised by parse_region; position is a 0-based byte offset.
class RegionError : public Error {
 public:
  RegionError(ErrorCode code, std::size_t position, const std::string& what)
      : Error(code, what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Maps a surface name to its id; nullopt when unknown.
using SurfaceResolver = std::function<std::optional<int>(std::string_view)>;

/// Region mini-language:
///   expr   := term (':' term)*           union
///   term   := factor+                    whitespace-separated intersection
///   factor := ['#'] ( ['+'|'-'] ref | '(' expr ')' )
///   ref    := integer | name
/// An unsigned ref is a positive sense. `#` directly followed by an unsigned
/// integer is rejected (PHITS reads that as a cell complement).
/// Throws SyntaxError (with position), UnknownSurfaceName or EmptyExpression.
/// The result is canonical.
RegionExpr parse_region(std::string_view text, const SurfaceResolver& resolver = {});

/// Canonical minimal-parentheses text: positive leaves print without '+',
/// unions inside intersections are parenthesized, complements always print
/// as `#(...)`.
std::string region_to_text(const RegionExpr& e);

/// Surface ids referenced by the expression, in first-use order.
std::vector<int> referenced_surfaces(const RegionExpr& e);

/// Evaluates the expression given a per-surface predicate "p is on the
/// negative side of surface id".
bool evaluate_region(const RegionExpr& e, const std::function<bool(int)>& negative_side);

}  // namespace fitsgeo
