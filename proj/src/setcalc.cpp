#include "ushift/setcalc.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "ushift/error.hpp"

namespace ushift {

std::string Universe::to_string() const {
  return infinite_ ? "infinite" : std::to_string(size_);
}

UPSet::UPSet(Universe u, std::vector<bool> prefix, std::vector<bool> pattern)
    : universe_(u), prefix_(std::move(prefix)), pattern_(std::move(pattern)) {
  canonicalize();
}

UPSet UPSet::empty(Universe u) {
  if (u.is_infinite()) return UPSet(u, {}, {false});
  return UPSet(u, std::vector<bool>(static_cast<std::size_t>(u.size()), false), {});
}

UPSet UPSet::all(Universe u) {
  if (u.is_infinite()) return UPSet(u, {}, {true});
  return UPSet(u, std::vector<bool>(static_cast<std::size_t>(u.size()), true), {});
}

UPSet UPSet::of(Universe u, const std::vector<Index>& members) {
  Index top = 0;
  for (Index m : members) {
    if (!u.contains(m)) {
      throw Error(ErrorCode::UniverseMismatch,
                  "index " + std::to_string(m) + " outside universe " + u.to_string());
    }
    top = std::max(top, m);
  }
  std::vector<bool> prefix(static_cast<std::size_t>(u.is_infinite() ? top : u.size()), false);
  for (Index m : members) prefix[static_cast<std::size_t>(m - 1)] = true;
  if (u.is_infinite()) return UPSet(u, std::move(prefix), {false});
  return UPSet(u, std::move(prefix), {});
}

UPSet UPSet::periodic(Universe u, Index start, const std::vector<bool>& pattern) {
  if (start < 1 || pattern.empty()) {
    throw Error(ErrorCode::UniverseMismatch, "periodic set needs start >= 1 and period >= 1");
  }
  const auto p = static_cast<Index>(pattern.size());
  return from_predicate(u, start, p, [&](Index i) {
    return i >= start && pattern[static_cast<std::size_t>((i - start) % p)];
  });
}

UPSet UPSet::from_predicate(Universe u, Index threshold, Index period,
                            const std::function<bool(Index)>& member) {
  if (!u.is_infinite()) {
    std::vector<bool> bits(static_cast<std::size_t>(u.size()));
    for (Index i = 1; i <= u.size(); ++i) bits[static_cast<std::size_t>(i - 1)] = member(i);
    return UPSet(u, std::move(bits), {});
  }
  threshold = std::max<Index>(threshold, 1);
  period = std::max<Index>(period, 1);
  std::vector<bool> prefix(static_cast<std::size_t>(threshold - 1));
  for (Index i = 1; i < threshold; ++i) prefix[static_cast<std::size_t>(i - 1)] = member(i);
  std::vector<bool> pattern(static_cast<std::size_t>(period));
  for (Index j = 0; j < period; ++j) pattern[static_cast<std::size_t>(j)] = member(threshold + j);
  return UPSet(u, std::move(prefix), std::move(pattern));
}

void UPSet::canonicalize() {
  if (!universe_.is_infinite()) {
    pattern_.clear();
    return;
  }
  const std::size_t p = pattern_.size();
  for (std::size_t d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    bool periodic = true;
    for (std::size_t j = d; j < p && periodic; ++j) periodic = pattern_[j] == pattern_[j % d];
    if (periodic) {
      pattern_.resize(d);
      break;
    }
  }
  while (!prefix_.empty() && prefix_.back() == pattern_.back()) {
    std::rotate(pattern_.rbegin(), pattern_.rbegin() + 1, pattern_.rend());
    prefix_.pop_back();
  }
}

bool UPSet::bit(Index i) const {
  if (i < start()) return prefix_[static_cast<std::size_t>(i - 1)];
  return pattern_[static_cast<std::size_t>((i - start()) % period())];
}

bool UPSet::contains(Index i) const {
  if (!universe_.contains(i)) return false;
  return bit(i);
}

Cardinality UPSet::cardinality() const {
  if (std::find(pattern_.begin(), pattern_.end(), true) != pattern_.end()) {
    return {true, 0};
  }
  return {false, static_cast<Index>(std::count(prefix_.begin(), prefix_.end(), true))};
}

bool UPSet::is_empty() const {
  return std::find(prefix_.begin(), prefix_.end(), true) == prefix_.end() &&
         std::find(pattern_.begin(), pattern_.end(), true) == pattern_.end();
}

bool UPSet::subset_of(const UPSet& other) const { return minus(other).is_empty(); }

std::optional<Index> UPSet::min_element() const {
  auto first = first_members(1);
  if (first.empty()) return std::nullopt;
  return first.front();
}

std::vector<Index> UPSet::first_members(std::size_t limit) const {
  std::vector<Index> out;
  for (Index i = 1; i < start() && out.size() < limit; ++i) {
    if (bit(i)) out.push_back(i);
  }
  if (cardinality().infinite) {
    for (Index i = start(); out.size() < limit; ++i) {
      if (bit(i)) out.push_back(i);
    }
  }
  return out;
}

std::vector<Index> UPSet::members() const {
  if (cardinality().infinite) {
    throw Error(ErrorCode::UniverseMismatch, "members() of infinite set " + to_string());
  }
  return first_members(prefix_.size());
}

std::vector<Index> UPSet::members_up_to(Index bound) const {
  std::vector<Index> out;
  for (Index i = 1; i <= bound && universe_.contains(i); ++i) {
    if (bit(i)) out.push_back(i);
  }
  return out;
}

UPSet UPSet::combine(const UPSet& a, const UPSet& b, Op op) {
  if (a.universe_ != b.universe_) {
    throw Error(ErrorCode::UniverseMismatch,
                "universe mismatch: " + a.universe_.to_string() + " vs " + b.universe_.to_string());
  }
  auto apply = [op](bool x, bool y) {
    switch (op) {
      case Op::Union: return x || y;
      case Op::Intersect: return x && y;
      case Op::Difference: return x && !y;
    }
    return false;
  };
  const Index threshold = std::max(a.start(), b.start());
  const Index period = a.universe_.is_infinite() ? std::lcm(a.period(), b.period()) : 1;
  return from_predicate(a.universe_, threshold, period,
                        [&](Index i) { return apply(a.bit(i), b.bit(i)); });
}

UPSet UPSet::unite(const UPSet& other) const { return combine(*this, other, Op::Union); }
UPSet UPSet::intersect(const UPSet& other) const { return combine(*this, other, Op::Intersect); }
UPSet UPSet::minus(const UPSet& other) const { return combine(*this, other, Op::Difference); }
UPSet UPSet::complement() const { return all(universe_).minus(*this); }

UPSet UPSet::preimage_affine(Universe domain, Index scale, Index offset) const {
  auto member = [&](Index i) { return contains(scale * i + offset); };
  if (scale == 0) return member(1) ? all(domain) : empty(domain);
  // For i past the threshold, scale*i + offset lies in the periodic part (or
  // beyond a finite universe), and shifting i by period() shifts it by a
  // multiple of period().
  const Index target = universe_.is_infinite() ? start() : universe_.size() + 1;
  Index threshold = (target - offset + scale - 1) / scale;
  threshold = std::max<Index>(threshold + 1, 1);
  return from_predicate(domain, threshold, universe_.is_infinite() ? period() : 1, member);
}

UPSet UPSet::image_affine(Universe codomain, Index scale, Index offset) const {
  if (scale == 0) {
    if (is_empty()) return empty(codomain);
    return singleton(codomain, offset);
  }
  auto member = [&](Index j) {
    const Index shifted = j - offset;
    if (shifted < scale || shifted % scale != 0) return false;
    return contains(shifted / scale);
  };
  if (!cardinality().infinite) {
    std::vector<Index> image;
    for (Index i : members()) {
      const Index j = scale * i + offset;
      if (!codomain.contains(j)) {
        throw Error(ErrorCode::UniverseMismatch,
                    "affine image " + std::to_string(j) + " outside universe " + codomain.to_string());
      }
      image.push_back(j);
    }
    return of(codomain, image);
  }
  const Index threshold = std::max<Index>(scale * start() + offset, 1);
  return from_predicate(codomain, threshold, scale * period(), member);
}

UPSet UPSet::rebase(Universe target) const {
  if (target == universe_) return *this;
  return from_predicate(target, start(), std::max<Index>(period(), 1),
                        [&](Index i) { return contains(i); });
}

std::string UPSet::to_string() const {
  std::ostringstream out;
  std::vector<Index> finite_part;
  for (Index i = 1; i < start(); ++i) {
    if (bit(i)) finite_part.push_back(i);
  }
  const bool infinite = cardinality().infinite;
  if (!finite_part.empty() || !infinite) {
    out << "fin{";
    for (std::size_t k = 0; k < finite_part.size(); ++k) out << (k ? "," : "") << finite_part[k];
    out << "}";
  }
  if (infinite) {
    if (!finite_part.empty()) out << "|";
    std::size_t shift = 0;
    while (!pattern_[shift]) ++shift;
    out << "ap(" << start() + static_cast<Index>(shift) << "," << period() << ",";
    for (std::size_t j = 0; j < pattern_.size(); ++j) {
      out << (pattern_[(shift + j) % pattern_.size()] ? '1' : '0');
    }
    out << ")";
  }
  return out.str();
}

namespace {

class SetParser {
 public:
  SetParser(const std::string& text, Universe u, int line, int column)
      : text_(text), universe_(u), line_(line), column_(column) {}

  UPSet parse() {
    UPSet result = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("set literal: " + message, line_, column_ + static_cast<int>(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool accept_word(const std::string& word) {
    skip_space();
    if (text_.compare(pos_, word.size(), word) != 0) return false;
    const std::size_t end = pos_ + word.size();
    if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) return false;
    pos_ = end;
    return true;
  }

  Index integer() {
    skip_space();
    const std::size_t begin = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == begin || (pos_ == begin + 1 && text_[begin] == '-')) fail("expected integer");
    return std::stoll(text_.substr(begin, pos_ - begin));
  }

  UPSet expression() {
    UPSet left = term();
    for (;;) {
      if (accept('|')) {
        left = left.unite(term());
      } else if (accept('\\')) {
        left = left.minus(term());
      } else {
        return left;
      }
    }
  }

  UPSet term() {
    UPSet left = factor();
    while (accept('&')) left = left.intersect(factor());
    return left;
  }

  UPSet factor() {
    if (accept('~')) return factor().complement();
    if (accept('(')) {
      UPSet inner = expression();
      expect(')');
      return inner;
    }
    const std::size_t at = pos_;
    if (accept_word("fin")) {
      expect('{');
      std::vector<Index> members;
      if (!accept('}')) {
        do {
          const std::size_t item = pos_;
          const Index i = integer();
          if (!universe_.contains(i)) {
            pos_ = item;
            skip_space();
            fail("index " + std::to_string(i) + " outside universe " + universe_.to_string());
          }
          members.push_back(i);
        } while (accept(','));
        expect('}');
      }
      return UPSet::of(universe_, members);
    }
    if (accept_word("ap")) {
      expect('(');
      const Index start = integer();
      expect(',');
      const Index period = integer();
      expect(',');
      skip_space();
      std::vector<bool> bits;
      while (pos_ < text_.size() && (text_[pos_] == '0' || text_[pos_] == '1')) {
        bits.push_back(text_[pos_++] == '1');
      }
      if (start < 1) fail("ap start must be >= 1");
      if (period < 1 || static_cast<Index>(bits.size()) != period) {
        fail("ap pattern length must equal the period");
      }
      expect(')');
      return UPSet::periodic(universe_, start, bits);
    }
    if (accept_word("all")) return UPSet::all(universe_);
    if (accept_word("none")) return UPSet::empty(universe_);
    pos_ = at;
    skip_space();
    fail("expected fin{...}, ap(...), all, none, '~' or '('");
  }

  const std::string& text_;
  Universe universe_;
  int line_;
  int column_;
  std::size_t pos_ = 0;
};

}  // namespace

UPSet parse_set(const std::string& text, Universe u, int line, int column) {
  return SetParser(text, u, line, column).parse();
}

}  // namespace ushift
