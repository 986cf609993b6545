#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autocong/error.hpp"

namespace autocong {

/// A set partition B of the variable indices {0, ..., k-1}. Blocks are kept
/// sorted by their smallest member; gamma(i) is the block holding variable i.
class SetPartition {
 public:
  SetPartition() = default;

  SetPartition(std::size_t arity, std::vector<std::vector<std::size_t>> blocks) : arity_(arity) {
    for (auto& b : blocks) {
      if (b.empty()) fail(ErrorCode::InvalidPartition, "empty block");
      std::sort(b.begin(), b.end());
    }
    std::sort(blocks.begin(), blocks.end());
    gamma_.assign(arity, kUnassigned);
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      for (std::size_t v : blocks[j]) {
        if (v >= arity) fail(ErrorCode::InvalidPartition, "variable index out of range");
        if (gamma_[v] != kUnassigned) fail(ErrorCode::InvalidPartition, "blocks overlap");
        gamma_[v] = j;
      }
    }
    for (std::size_t g : gamma_) {
      if (g == kUnassigned) fail(ErrorCode::InvalidPartition, "blocks do not cover every variable");
    }
    blocks_ = std::move(blocks);
  }

  /// {{0, ..., k-1}}: the full diagonal.
  static SetPartition full(std::size_t arity) {
    std::vector<std::size_t> all(arity);
    for (std::size_t i = 0; i < arity; ++i) all[i] = i;
    return SetPartition(arity, {all});
  }

  /// {{0}, ..., {k-1}}: no variables collapsed.
  static SetPartition discrete(std::size_t arity) {
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < arity; ++i) blocks.push_back({i});
    return SetPartition(arity, std::move(blocks));
  }

  /// Parses text such as "{1,2,3,4}" or "{1},{2}" (1-based variable numbers).
  static SetPartition parse(std::size_t arity, std::string_view text) {
    std::vector<std::vector<std::size_t>> blocks;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    while (i < text.size()) {
      if (text[i] != '{') fail(ErrorCode::InvalidPartition, "expected '{' in partition " + std::string(text));
      ++i;
      std::vector<std::size_t> block;
      for (;;) {
        skip();
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) fail(ErrorCode::InvalidPartition, "expected variable number in " + std::string(text));
        std::size_t v = std::stoul(std::string(text.substr(start, i - start)));
        if (v == 0) fail(ErrorCode::InvalidPartition, "variables are numbered from 1");
        block.push_back(v - 1);
        skip();
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        if (i < text.size() && text[i] == '}') {
          ++i;
          break;
        }
        fail(ErrorCode::InvalidPartition, "unterminated block in " + std::string(text));
      }
      blocks.push_back(std::move(block));
      skip();
      if (i < text.size() && text[i] == ',') ++i;
      skip();
    }
    return SetPartition(arity, std::move(blocks));
  }

  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  std::size_t gamma(std::size_t var) const { return gamma_.at(var); }
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
  bool is_full() const noexcept { return blocks_.size() == 1; }
  bool is_discrete() const noexcept { return blocks_.size() == arity_; }

  /// Spreads a |B|-tuple of digits to the k-tuple (d_gamma(1), ..., d_gamma(k)).
  std::vector<std::uint32_t> expand(std::span<const std::uint32_t> digits) const {
    if (digits.size() != blocks_.size()) fail(ErrorCode::ArityMismatch, "digit tuple does not match partition");
    std::vector<std::uint32_t> out(arity_);
    for (std::size_t i = 0; i < arity_; ++i) out[i] = digits[gamma_[i]];
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      if (j) s += ",";
      s += "{";
      for (std::size_t t = 0; t < blocks_[j].size(); ++t) {
        if (t) s += ",";
        s += std::to_string(blocks_[j][t] + 1);
      }
      s += "}";
    }
    return s;
  }

  friend bool operator==(const SetPartition&, const SetPartition&) = default;

 private:
  static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::size_t arity_ = 0;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> gamma_;
};

}  // namespace autocong
