#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cmof {

// Whitespace split; empty input gives an empty list.
std::vector<std::string> word_tokenize(std::string_view text);

struct TokenizerTrainConfig {
  size_t target_vocab = 8000;
  size_t seed_max_piece_len = 8;   // in codepoints
  size_t seed_max_vocab = 0;       // 0 means 20 * target_vocab
  int em_iterations_per_round = 2;
  double prune_keep_fraction = 0.75;
  size_t min_piece_count = 2;
  int threads = 1;
};

// Unigram language model over subword pieces. Pieces are stored sorted;
// a piece's id is its position in sorted order. Log-probabilities are
// natural logs. Every character of the training corpus is a piece, so
// every training sentence is segmentable.
class UnigramModel {
 public:
  UnigramModel() = default;
  // `pieces` need not be sorted; probabilities must sum to 1 within 1e-6.
  explicit UnigramModel(std::vector<std::pair<std::string, double>> pieces);

  const std::vector<std::pair<std::string, double>>& pieces() const {
    return pieces_;
  }
  size_t size() const { return pieces_.size(); }
  // Piece id in sorted-piece order, or -1.
  int piece_id(std::string_view piece) const;
  std::optional<double> log_prob(std::string_view piece) const;
  size_t max_piece_codepoints() const { return max_piece_cps_; }

  // Log-probability assigned to an unknown single character.
  double unk_log_prob() const;
  static constexpr int kUnkId = -1;
  // Word-boundary marker emitted by encode between whitespace tokens.
  static constexpr int kBoundaryId = -2;

  void save(const std::string& path) const;
  static UnigramModel load(const std::string& path);

 private:
  std::vector<std::pair<std::string, double>> pieces_;  // sorted by piece
  std::unordered_map<std::string, int> index_;
  size_t max_piece_cps_ = 0;
  double min_log_prob_ = 0.0;
};

// EM training with likelihood-loss pruning. Throws ConfigError when
// target_vocab is smaller than the corpus alphabet.
UnigramModel train_unigram(const std::vector<std::string>& corpus,
                           const TokenizerTrainConfig& config);

// Viterbi segmentation, applied per whitespace token and concatenated.
// Ties break toward fewer pieces, then leftmost-longest. Unknown
// characters become their own pieces at unk_log_prob() when allow_unk,
// otherwise DataError.
std::vector<std::string> segment(const UnigramModel& model,
                                 std::string_view text, bool allow_unk = true);

// segment + piece ids; unknown pieces map to UnigramModel::kUnkId.
std::vector<int> encode(const UnigramModel& model, std::string_view text,
                        bool allow_unk = true);
// Inverse of encode up to whitespace normalization (unknown ids render
// as U+FFFD).
std::string decode(const UnigramModel& model, const std::vector<int>& ids);

// Total corpus log-likelihood under the model (whitespace tokens
// independent). Used by training and exposed for tests.
double corpus_log_likelihood(const UnigramModel& model,
                             const std::vector<std::string>& corpus);

// Forward-backward expected piece counts for one whitespace token.
std::unordered_map<std::string, double> expected_piece_counts(
    const UnigramModel& model, std::string_view token);

}  // namespace cmof
