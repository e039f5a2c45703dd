#include "ll/int_sequence.hpp"

#include <algorithm>
#include <sstream>

#include "ll/errors.hpp"

namespace ll {

IntSequence::IntSequence(std::vector<std::int64_t> terms, bool strictly_increasing)
    : terms_(std::move(terms)), strictly_increasing_(strictly_increasing) {
  if (terms_.empty()) throw ParamError("sequence must have at least one term");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i] < 1)
      throw ParamError("sequence terms must be >= 1, term " + std::to_string(i + 1) + " is " +
                       std::to_string(terms_[i]));
    if (strictly_increasing_ && i > 0 && terms_[i] <= terms_[i - 1])
      throw ParamError("sequence not strictly increasing at position " + std::to_string(i + 1));
  }
}

std::int64_t IntSequence::at(std::size_t pos1) const {
  if (pos1 < 1 || pos1 > terms_.size())
    throw ParamError("sequence position " + std::to_string(pos1) + " out of range [1, " +
                     std::to_string(terms_.size()) + "]");
  return terms_[pos1 - 1];
}

IntSequence IntSequence::tail(std::size_t m) const {
  if (m < 1 || m > terms_.size())
    throw ParamError("tail start " + std::to_string(m) + " out of range");
  return IntSequence(std::vector<std::int64_t>(terms_.begin() + static_cast<std::ptrdiff_t>(m - 1),
                                               terms_.end()),
                     strictly_increasing_);
}

BlockSystem::BlockSystem(std::vector<std::vector<std::int64_t>> blocks)
    : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw ParamError("block system must have at least one block");
  std::int64_t prev_max = 0;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    auto& h = blocks_[i];
    if (h.empty()) throw ParamError("block " + std::to_string(i + 1) + " is empty");
    std::sort(h.begin(), h.end());
    if (h.front() < 1) throw ParamError("block positions must be >= 1");
    if (std::adjacent_find(h.begin(), h.end()) != h.end())
      throw ParamError("block " + std::to_string(i + 1) + " has repeated positions");
    if (h.front() <= prev_max)
      throw ParamError("blocks must satisfy max H_i < min H_{i+1}; violated at block " +
                       std::to_string(i + 1));
    prev_max = h.back();
  }
}

IntSequence sum_subsystem(const IntSequence& xs, const BlockSystem& blocks) {
  std::vector<std::int64_t> ys;
  ys.reserve(blocks.size());
  for (const auto& h : blocks.blocks()) {
    std::int64_t y = 0;
    for (auto pos : h) y += xs.at(static_cast<std::size_t>(pos));
    ys.push_back(y);
  }
  return IntSequence(std::move(ys));
}

IntSequence parse_sequence(std::istream& in) {
  std::vector<std::int64_t> terms;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    try {
      std::size_t used = 0;
      const std::int64_t v = std::stoll(line.substr(pos), &used);
      const auto rest = line.find_first_not_of(" \t\r", pos + used);
      if (rest != std::string::npos && line[rest] != '#')
        throw ParseError("line " + std::to_string(lineno) + ": trailing junk");
      terms.push_back(v);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": expected one integer per line");
    }
  }
  if (terms.empty()) throw ParseError("sequence file has no terms");
  try {
    return IntSequence(std::move(terms));
  } catch (const ParamError& e) {
    throw ParseError(std::string("sequence file invalid: ") + e.what());
  }
}

IntSequence parse_sequence_text(const std::string& text) {
  std::istringstream in(text);
  return parse_sequence(in);
}

std::string to_text(const IntSequence& xs) {
  std::ostringstream out;
  for (auto t : xs.terms()) out << t << "\n";
  return out.str();
}

}  // namespace ll
