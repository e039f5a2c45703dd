#ifndef LL_INT_SEQUENCE_HPP
#define LL_INT_SEQUENCE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ll {

/// A finite sequence of strictly positive integers. Repeated terms are
/// allowed unless strictly_increasing is requested at construction.
class IntSequence {
public:
  IntSequence(std::vector<std::int64_t> terms, bool strictly_increasing = false);

  const std::vector<std::int64_t>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  std::int64_t at(std::size_t pos1) const;  // 1-based, matching block indices
  bool strictly_increasing() const { return strictly_increasing_; }

  /// Terms from 1-based position `m` onward.
  IntSequence tail(std::size_t m) const;

private:
  std::vector<std::int64_t> terms_;
  bool strictly_increasing_;
};

/// Blocks H_1, ..., H_k of 1-based positions into some IntSequence with
/// max H_i < min H_{i+1}. Construction validates ordering and
/// nonemptiness; positions are kept sorted.
class BlockSystem {
public:
  explicit BlockSystem(std::vector<std::vector<std::int64_t>> blocks);
  const std::vector<std::vector<std::int64_t>>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }

private:
  std::vector<std::vector<std::int64_t>> blocks_;
};

/// y_i = sum over H_i of xs. Throws ParamError when a block indexes past
/// the sequence.
IntSequence sum_subsystem(const IntSequence& xs, const BlockSystem& blocks);

/// Sequence file format: one integer per line, `#` comments allowed.
IntSequence parse_sequence(std::istream& in);
IntSequence parse_sequence_text(const std::string& text);
std::string to_text(const IntSequence& xs);

}  // namespace ll

#endif
