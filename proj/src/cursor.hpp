#pragma once

// Small scanner shared by the literal parsers.

#include <cctype>
#include <string>

#include "ushift/error.hpp"
#include "ushift/setcalc.hpp"

namespace ushift::detail {

class Cursor {
 public:
  Cursor(const std::string& text, int line, int column) : text_(text), line_(line), column_(column) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_ + static_cast<int>(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ == text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c || at_end()) return false;
    ++pos_;
    return true;
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

  void expect_word(const std::string& word) {
    if (!accept_word(word)) fail("expected '" + word + "'");
  }

  Index integer() {
    skip_space();
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == begin) fail("expected integer");
    return std::stoll(text_.substr(begin, pos_ - begin));
  }

  // `e<digits>`
  Index edge() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != 'e') fail("expected edge name 'e<n>'");
    ++pos_;
    const Index e = integer();
    if (e < 1) fail("edge indices start at 1");
    return e;
  }

  bool at_edge() { return peek() == 'e'; }

  // Text up to (not including) the next `close`, consumed together with it.
  // Returns the column of the first character.
  std::string until(char close, int& start_column) {
    const std::size_t end = text_.find(close, pos_);
    if (end == std::string::npos) fail(std::string("missing '") + close + "'");
    start_column = column_ + static_cast<int>(pos_);
    std::string inner = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return inner;
  }

  UPSet set_in_brackets(Universe u) {
    expect('[');
    int col = 0;
    const std::string inner = until(']', col);
    return parse_set(inner, u, line_, col);
  }

  void finish() {
    if (!at_end()) fail("unexpected trailing text");
  }

  int line() const { return line_; }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_;
  int column_;
};

}  // namespace ushift::detail
