#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "modec/provider.hpp"
#include "modec/resistance.hpp"
#include "modec/token_sequence.hpp"

namespace modec {

// =============================================================================
// Decoding strategies over a DistributionProvider.
//
// The momentum strategy emits the model argmax while it is novel; once the
// argmax already occurs in the context, the step re-ranks the top-k
// candidates by probability minus alpha times the resistance of their
// re-entry depth. Everything else here is the comparison set: greedy, top-k
// and nucleus sampling, length-normalized beam search, and contrastive
// search with a max-cosine degeneration penalty.
//
// Tie policy everywhere: higher probability first, then lower token id;
// penalized selections keep the first candidate in that order among equal
// scores.
// =============================================================================

enum class Strategy {
  greedy,
  momentum,
  top_k_sample,
  nucleus_sample,
  beam,
  contrastive,
};

const char* to_string(Strategy s);
Strategy strategy_from_string(std::string_view name);  // throws ConfigError

// Which rule produced a step's token.
//   novel_greedy:     argmax emitted because it was absent from the context
//   penalized_argmax: argmax of prob - alpha * resistance(depth) over top-k
//   sampled:          drawn from a renormalized candidate set
//   beam:             token of the winning beam hypothesis
//   cs:               contrastive argmax of (1-a)*prob - a*max_similarity
//   greedy:           plain argmax, no novelty check
//   terminator:       argmax was the terminator, ending the session
enum class Branch {
  novel_greedy,
  penalized_argmax,
  sampled,
  beam,
  cs,
  greedy,
  terminator,
};

const char* to_string(Branch b);
Branch branch_from_string(std::string_view name);  // throws ConfigError

// Candidate row of a penalized-argmax step, in selection order.
struct ScoredCandidate {
  TokenId token = -1;
  double prob = 0.0;
  std::uint32_t depth = 0;
  double resistance = 0.0;
  double score = 0.0;

  bool operator==(const ScoredCandidate&) const = default;
};

struct StepTrace {
  int step = 0;  // 1-based position within the generated suffix
  Branch branch = Branch::greedy;
  TokenId token = -1;
  int model_calls = 0;
  // Populated for penalized-argmax steps only; the emitted token is the
  // score argmax of these rows, first row winning ties.
  std::vector<ScoredCandidate> candidates;

  bool operator==(const StepTrace&) const = default;
};

enum class TerminatedBy { terminator, max_steps };

const char* to_string(TerminatedBy t);
TerminatedBy terminated_by_from_string(std::string_view name);

struct GenerationRecord {
  std::vector<TokenId> prompt;
  std::vector<TokenId> generated;
  std::vector<StepTrace> traces;
  std::int64_t total_model_calls = 0;
  TerminatedBy terminated_by = TerminatedBy::max_steps;
  std::uint64_t seed = 0;

  bool operator==(const GenerationRecord&) const = default;
};

// Provider failure mid-generation; carries whatever was generated before the
// failing step.
class GenerationError : public std::runtime_error {
 public:
  GenerationError(const std::string& what, GenerationRecord partial)
      : std::runtime_error(what), partial_record(std::move(partial)) {}

  GenerationRecord partial_record;
};

// Deterministic uniform source for the samplers: a fixed 53-bit draw from
// mt19937_64, so sequences are reproducible across platforms.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1).
  double canonical() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 eng_;
};

struct StepResult {
  TokenId token = -1;
  StepTrace trace;
};

// ---------------------------------------------------------------------------
// Single-step rules. Each makes the provider calls it reports in
// trace.model_calls and fills every trace field except step.
// ---------------------------------------------------------------------------

StepResult step_greedy(const DistributionProvider& provider,
                       const TokenSequence& ctx);

StepResult step_momentum(const DistributionProvider& provider,
                         const TokenSequence& ctx, const DecoderConfig& cfg);

enum class SampleMode { top_k, nucleus };

StepResult step_sample(const DistributionProvider& provider,
                       const TokenSequence& ctx, const DecoderConfig& cfg,
                       SampleMode mode, SampleRng& rng);

// `context_reps` holds one representation per context position; the winning
// candidate's representation is returned through `accepted_rep` so the
// caller can extend that history without an extra provider call.
StepResult step_contrastive(const DistributionProvider& provider,
                            const TokenSequence& ctx, const DecoderConfig& cfg,
                            const std::vector<Representation>& context_reps,
                            Representation* accepted_rep);

// ---------------------------------------------------------------------------
// Beam search. Hypotheses are ranked by sum of natural-log probabilities
// divided by suffix length, ties broken by lexicographically smaller suffix.
// Every live hypothesis costs one provider call per step (width identical
// copies on the first step), so calls per emitted token is exactly the
// width. The search stops when the top-ranked child ends with the
// terminator; lower-ranked terminator children are discarded rather than
// kept aside.
// ---------------------------------------------------------------------------

struct BeamHypothesis {
  std::vector<TokenId> suffix;  // generated tokens only
  double sum_logprob = 0.0;

  double normalized_score() const {
    return suffix.empty() ? 0.0
                          : sum_logprob / static_cast<double>(suffix.size());
  }
};

struct BeamState {
  std::vector<BeamHypothesis> beams;  // best first
  std::vector<int> calls_per_step;
  bool done = false;  // best hypothesis ends with the terminator

  int steps() const { return static_cast<int>(calls_per_step.size()); }
};

BeamState beam_init(const DecoderConfig& cfg);

void step_beam(const DistributionProvider& provider,
               std::span<const TokenId> prompt, BeamState& state,
               const DecoderConfig& cfg);

GenerationRecord finalize_beam(std::span<const TokenId> prompt,
                               const BeamState& state,
                               const DecoderConfig& cfg);

// ---------------------------------------------------------------------------
// Full sessions.
// ---------------------------------------------------------------------------

// Per-step wall-clock durations, for callers that report timing.
struct StepTimings {
  std::vector<double> micros;
};

// Runs `strategy` from `prompt` until the terminator is emitted or
// cfg.max_steps tokens exist. Throws ConfigError on an empty prompt or
// invalid config, CapabilityError when the strategy needs representations
// the provider lacks, and GenerationError (with partial record) when the
// provider fails mid-run.
GenerationRecord generate(Strategy strategy,
                          const DistributionProvider& provider,
                          std::span<const TokenId> prompt,
                          const DecoderConfig& cfg,
                          StepTimings* timings = nullptr);

}  // namespace modec
