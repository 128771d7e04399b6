#include "fitsgeo/region.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace fitsgeo {

namespace {

constexpr int kMaxDepth = 256;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  Parser(std::string_view text, const SurfaceResolver& resolver)
      : text_(text), resolver_(resolver) {}

  RegionExpr parse() {
    skip_space();
    if (at_end()) throw RegionError(ErrorCode::EmptyExpression, 0, "empty region expression");
    RegionExpr e = parse_expr(0);
    skip_space();
    if (!at_end()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return canonicalize(e);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw RegionError(ErrorCode::SyntaxError, pos_,
                      "region syntax error at position " + std::to_string(pos_) + ": " + what);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && is_space(peek())) ++pos_;
  }

  bool starts_factor() const {
    if (at_end()) return false;
    const char c = peek();
    return c == '#' || c == '+' || c == '-' || c == '(' || is_name_start(c) ||
           std::isdigit(static_cast<unsigned char>(c));
  }

  RegionExpr parse_expr(int depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    std::vector<RegionExpr> terms;
    terms.push_back(parse_term(depth));
    for (;;) {
      skip_space();
      if (at_end() || peek() != ':') break;
      ++pos_;
      terms.push_back(parse_term(depth));
    }
    if (terms.size() == 1) return std::move(terms.front());
    return Union{std::move(terms)};
  }

  RegionExpr parse_term(int depth) {
    std::vector<RegionExpr> factors;
    for (;;) {
      skip_space();
      if (!starts_factor()) break;
      factors.push_back(parse_factor(depth));
    }
    if (factors.empty()) fail(at_end() ? "expected a surface reference" : "expected a surface reference, got '" + std::string(1, peek()) + "'");
    if (factors.size() == 1) return std::move(factors.front());
    return Intersection{std::move(factors)};
  }

  RegionExpr parse_factor(int depth) {
    bool complemented = false;
    if (peek() == '#') {
      complemented = true;
      ++pos_;
      if (at_end() || !(peek() == '(' || peek() == '+' || peek() == '-'))
        fail("'#' must be followed by '(' or a signed surface reference");
    }
    RegionExpr inner = parse_primary(depth);
    if (complemented) return Complement{std::make_shared<const RegionExpr>(std::move(inner))};
    return inner;
  }

  RegionExpr parse_primary(int depth) {
    if (peek() == '(') {
      ++pos_;
      RegionExpr e = parse_expr(depth + 1);
      skip_space();
      if (at_end() || peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    Sign sign = Sign::Positive;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? Sign::Negative : Sign::Positive;
      ++pos_;
      if (at_end() || is_space(peek())) fail("sign must be followed directly by a surface reference");
    }
    return SenseRef{parse_ref(), sign};
  }

  int parse_ref() {
    const std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (!at_end() && is_name_char(peek())) fail("malformed surface number");
      int id = 0;
      const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, id);
      if (res.ec != std::errc() || id < 1) {
        pos_ = start;
        fail("surface number must be a positive integer");
      }
      return id;
    }
    if (!is_name_start(peek())) fail("expected a surface number or name");
    while (!at_end() && is_name_char(peek())) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    std::optional<int> id;
    if (resolver_) id = resolver_(name);
    if (!id)
      throw RegionError(ErrorCode::UnknownSurfaceName, start,
                        "unknown surface name '" + std::string(name) + "' at position " +
                            std::to_string(start));
    return *id;
  }

  std::string_view text_;
  const SurfaceResolver& resolver_;
  std::size_t pos_ = 0;
};

void print(const RegionExpr& e, std::string& out) {
  std::visit(overloaded{
                 [&](const SenseRef& r) {
                   if (r.sign == Sign::Negative) out += '-';
                   out += std::to_string(r.surface_id);
                 },
                 [&](const Intersection& i) {
                   for (std::size_t k = 0; k < i.terms.size(); ++k) {
                     if (k) out += ' ';
                     const bool paren = std::holds_alternative<Union>(i.terms[k].node) ||
                                        std::holds_alternative<Intersection>(i.terms[k].node);
                     if (paren) out += '(';
                     print(i.terms[k], out);
                     if (paren) out += ')';
                   }
                 },
                 [&](const Union& u) {
                   for (std::size_t k = 0; k < u.terms.size(); ++k) {
                     if (k) out += " : ";
                     const bool paren = std::holds_alternative<Union>(u.terms[k].node);
                     if (paren) out += '(';
                     print(u.terms[k], out);
                     if (paren) out += ')';
                   }
                 },
                 [&](const Complement& c) {
                   out += "#(";
                   print(*c.inner, out);
                   out += ')';
                 },
             },
             e.node);
}

template <class Op>
RegionExpr flatten(const std::vector<RegionExpr>& terms) {
  std::vector<RegionExpr> flat;
  for (const auto& t : terms) {
    RegionExpr c = canonicalize(t);
    if (auto* same = std::get_if<Op>(&c.node)) {
      for (auto& inner : same->terms) flat.push_back(std::move(inner));
    } else {
      flat.push_back(std::move(c));
    }
  }
  if (flat.size() == 1) return std::move(flat.front());
  return Op{std::move(flat)};
}

void collect(const RegionExpr& e, std::vector<int>& ids) {
  std::visit(overloaded{
                 [&](const SenseRef& r) {
                   if (std::find(ids.begin(), ids.end(), r.surface_id) == ids.end())
                     ids.push_back(r.surface_id);
                 },
                 [&](const Intersection& i) {
                   for (const auto& t : i.terms) collect(t, ids);
                 },
                 [&](const Union& u) {
                   for (const auto& t : u.terms) collect(t, ids);
                 },
                 [&](const Complement& c) { collect(*c.inner, ids); },
             },
             e.node);
}

}  // namespace

bool operator==(const RegionExpr& a, const RegionExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const SenseRef& r) {
            const auto& o = std::get<SenseRef>(b.node);
            return r.surface_id == o.surface_id && r.sign == o.sign;
          },
          [&](const Intersection& i) { return i.terms == std::get<Intersection>(b.node).terms; },
          [&](const Union& u) { return u.terms == std::get<Union>(b.node).terms; },
          [&](const Complement& c) { return *c.inner == *std::get<Complement>(b.node).inner; },
      },
      a.node);
}

RegionExpr sense_neg(const Surface& s) { return SenseRef{s.id, Sign::Negative}; }
RegionExpr sense_pos(const Surface& s) { return SenseRef{s.id, Sign::Positive}; }

RegionExpr intersect(std::vector<RegionExpr> terms) {
  if (terms.empty()) throw Error(ErrorCode::EmptyExpression, "intersection needs at least one term");
  if (terms.size() == 1) return std::move(terms.front());
  return Intersection{std::move(terms)};
}

RegionExpr unite(std::vector<RegionExpr> terms) {
  if (terms.empty()) throw Error(ErrorCode::EmptyExpression, "union needs at least one term");
  if (terms.size() == 1) return std::move(terms.front());
  return Union{std::move(terms)};
}

RegionExpr complement(RegionExpr inner) {
  return Complement{std::make_shared<const RegionExpr>(std::move(inner))};
}

RegionExpr canonicalize(const RegionExpr& e) {
  return std::visit(overloaded{
                        [](const SenseRef& r) -> RegionExpr { return r; },
                        [](const Intersection& i) { return flatten<Intersection>(i.terms); },
                        [](const Union& u) { return flatten<Union>(u.terms); },
                        [](const Complement& c) { return complement(canonicalize(*c.inner)); },
                    },
                    e.node);
}

RegionExpr parse_region(std::string_view text, const SurfaceResolver& resolver) {
  return Parser(text, resolver).parse();
}

std::string region_to_text(const RegionExpr& e) {
  std::string out;
  print(canonicalize(e), out);
  return out;
}

std::vector<int> referenced_surfaces(const RegionExpr& e) {
  std::vector<int> ids;
  collect(e, ids);
  return ids;
}

bool evaluate_region(const RegionExpr& e, const std::function<bool(int)>& negative_side) {
  return std::visit(
      overloaded{
          [&](const SenseRef& r) { return negative_side(r.surface_id) == (r.sign == Sign::Negative); },
          [&](const Intersection& i) {
            return std::all_of(i.terms.begin(), i.terms.end(),
                               [&](const RegionExpr& t) { return evaluate_region(t, negative_side); });
          },
          [&](const Union& u) {
            return std::any_of(u.terms.begin(), u.terms.end(),
                               [&](const RegionExpr& t) { return evaluate_region(t, negative_side); });
          },
          [&](const Complement& c) { return !evaluate_region(*c.inner, negative_side); },
      },
      e.node);
}

}  // namespace fitsgeo
