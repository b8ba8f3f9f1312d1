#include "modec/decoders.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "modec/kernels.hpp"

namespace modec {

namespace {

double cosine_similarity(const Representation& a, const Representation& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("representation dimensions differ");
  if (a.empty()) return 0.0;
  const auto& ops = kern::active_ops();
  const double na = ops.dot(a.data(), a.data(), a.size());
  const double nb = ops.dot(b.data(), b.data(), b.size());
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return ops.dot(a.data(), b.data(), a.size()) / std::sqrt(na * nb);
}

std::vector<TokenId> concat(std::span<const TokenId> ctx, TokenId next) {
  std::vector<TokenId> out(ctx.begin(), ctx.end());
  out.push_back(next);
  return out;
}

}  // namespace

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::greedy: return "greedy";
    case Strategy::momentum: return "momentum";
    case Strategy::top_k_sample: return "top-k";
    case Strategy::nucleus_sample: return "nucleus";
    case Strategy::beam: return "beam";
    case Strategy::contrastive: return "contrastive";
  }
  return "unknown";
}

Strategy strategy_from_string(std::string_view name) {
  if (name == "greedy") return Strategy::greedy;
  if (name == "momentum") return Strategy::momentum;
  if (name == "top-k" || name == "top_k") return Strategy::top_k_sample;
  if (name == "nucleus") return Strategy::nucleus_sample;
  if (name == "beam") return Strategy::beam;
  if (name == "contrastive" || name == "cs") return Strategy::contrastive;
  throw ConfigError("unknown strategy: " + std::string(name));
}

const char* to_string(Branch b) {
  switch (b) {
    case Branch::novel_greedy: return "novel-greedy";
    case Branch::penalized_argmax: return "penalized-argmax";
    case Branch::sampled: return "sampled";
    case Branch::beam: return "beam";
    case Branch::cs: return "cs";
    case Branch::greedy: return "greedy";
    case Branch::terminator: return "terminator";
  }
  return "unknown";
}

Branch branch_from_string(std::string_view name) {
  if (name == "novel-greedy") return Branch::novel_greedy;
  if (name == "penalized-argmax") return Branch::penalized_argmax;
  if (name == "sampled") return Branch::sampled;
  if (name == "beam") return Branch::beam;
  if (name == "cs") return Branch::cs;
  if (name == "greedy") return Branch::greedy;
  if (name == "terminator") return Branch::terminator;
  throw ConfigError("unknown branch: " + std::string(name));
}

const char* to_string(TerminatedBy t) {
  switch (t) {
    case TerminatedBy::terminator: return "terminator";
    case TerminatedBy::max_steps: return "max_steps";
  }
  return "unknown";
}

TerminatedBy terminated_by_from_string(std::string_view name) {
  if (name == "terminator") return TerminatedBy::terminator;
  if (name == "max_steps") return TerminatedBy::max_steps;
  throw ConfigError("unknown termination reason: " + std::string(name));
}

StepResult step_greedy(const DistributionProvider& provider,
                       const TokenSequence& ctx) {
  const ProbDist dist = provider.next_distribution(ctx.tokens());
  StepResult r;
  r.token = dist.argmax();
  r.trace.branch = r.token == provider.vocab().terminator_id
                       ? Branch::terminator
                       : Branch::greedy;
  r.trace.token = r.token;
  r.trace.model_calls = 1;
  return r;
}

StepResult step_momentum(const DistributionProvider& provider,
                         const TokenSequence& ctx, const DecoderConfig& cfg) {
  const ProbDist dist = provider.next_distribution(ctx.tokens());
  StepResult r;
  r.trace.model_calls = 1;
  // The candidate list is ordered by probability then id, so its head is
  // the argmax; one selection pass covers both branches.
  const CandidateSet cands = top_k_candidates(dist, cfg.top_k);
  const TokenId top = cands.front().token;
  if (top == provider.vocab().terminator_id) {
    // The terminator ends the session whether or not it already occurred,
    // so it bypasses the re-entry penalty.
    r.token = top;
    r.trace.branch = Branch::terminator;
    r.trace.token = top;
    return r;
  }
  if (!ctx.contains(top)) {
    r.token = top;
    r.trace.branch = Branch::novel_greedy;
    r.trace.token = top;
    return r;
  }
  r.trace.branch = Branch::penalized_argmax;
  r.trace.candidates.reserve(cands.size());
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const std::uint32_t depth = ctx.circular_depth(cands[i].token);
    const double res = cfg.resistance(depth);
    const double score = cands[i].prob - cfg.alpha * res;
    r.trace.candidates.push_back(
        {cands[i].token, cands[i].prob, depth, res, score});
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  r.token = cands[best].token;
  r.trace.token = r.token;
  return r;
}

StepResult step_sample(const DistributionProvider& provider,
                       const TokenSequence& ctx, const DecoderConfig& cfg,
                       SampleMode mode, SampleRng& rng) {
  const ProbDist dist = provider.next_distribution(ctx.tokens());
  const CandidateSet cands = mode == SampleMode::top_k
                                 ? top_k_candidates(dist, cfg.top_k)
                                 : nucleus_set(dist, cfg.nucleus_p);
  if (cands.empty())
    throw std::domain_error("empty candidate set while sampling");
  // The walk and the mass use the same summation order, so the draw always
  // lands on a candidate.
  double mass = 0.0;
  for (const Candidate& c : cands) mass += c.prob;
  if (!(mass > 0.0))
    throw std::domain_error("zero-mass candidate set while sampling");
  const double u = rng.canonical() * mass;
  StepResult r;
  r.trace.branch = Branch::sampled;
  r.trace.model_calls = 1;
  double cum = 0.0;
  r.token = cands.back().token;
  for (const Candidate& c : cands) {
    cum += c.prob;
    if (u < cum) {
      r.token = c.token;
      break;
    }
  }
  r.trace.token = r.token;
  return r;
}

StepResult step_contrastive(const DistributionProvider& provider,
                            const TokenSequence& ctx, const DecoderConfig& cfg,
                            const std::vector<Representation>& context_reps,
                            Representation* accepted_rep) {
  const ProbDist dist = provider.next_distribution(ctx.tokens());
  const CandidateSet cands = top_k_candidates(dist, cfg.top_k);
  StepResult r;
  r.trace.branch = Branch::cs;
  r.trace.model_calls = 1 + static_cast<int>(cands.size());
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  std::vector<Representation> cand_reps;
  cand_reps.reserve(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    cand_reps.push_back(
        provider.representation(concat(ctx.tokens(), cands[i].token)));
    double max_sim = -std::numeric_limits<double>::infinity();
    for (const Representation& h : context_reps)
      max_sim = std::max(max_sim, cosine_similarity(cand_reps.back(), h));
    if (context_reps.empty()) max_sim = 0.0;
    const double score =
        (1.0 - cfg.cs_alpha) * cands[i].prob - cfg.cs_alpha * max_sim;
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  r.token = cands[best].token;
  r.trace.token = r.token;
  if (accepted_rep != nullptr) *accepted_rep = std::move(cand_reps[best]);
  return r;
}

BeamState beam_init(const DecoderConfig& cfg) {
  BeamState st;
  st.beams.assign(static_cast<std::size_t>(cfg.beam_width), BeamHypothesis{});
  return st;
}

void step_beam(const DistributionProvider& provider,
               std::span<const TokenId> prompt, BeamState& state,
               const DecoderConfig& cfg) {
  if (state.done) return;
  const auto vocab_size = static_cast<int>(provider.vocab().size);
  const int width = cfg.beam_width;
  int calls = 0;
  std::vector<BeamHypothesis> pool;
  for (const BeamHypothesis& hyp : state.beams) {
    std::vector<TokenId> context(prompt.begin(), prompt.end());
    context.insert(context.end(), hyp.suffix.begin(), hyp.suffix.end());
    const ProbDist dist = provider.next_distribution(context);
    ++calls;
    const CandidateSet cands =
        top_k_candidates(dist, std::min(width, vocab_size));
    for (const Candidate& c : cands) {
      if (c.prob <= 0.0) continue;
      BeamHypothesis child;
      child.suffix = hyp.suffix;
      child.suffix.push_back(c.token);
      child.sum_logprob = hyp.sum_logprob + std::log(c.prob);
      pool.push_back(std::move(child));
    }
  }
  state.calls_per_step.push_back(calls);
  std::sort(pool.begin(), pool.end(),
            [](const BeamHypothesis& a, const BeamHypothesis& b) {
              const double sa = a.normalized_score();
              const double sb = b.normalized_score();
              if (sa != sb) return sa > sb;
              return a.suffix < b.suffix;
            });
  pool.erase(std::unique(pool.begin(), pool.end(),
                         [](const BeamHypothesis& a, const BeamHypothesis& b) {
                           return a.suffix == b.suffix;
                         }),
             pool.end());
  if (pool.empty()) {
    GenerationRecord partial;
    partial.prompt.assign(prompt.begin(), prompt.end());
    throw GenerationError("no extendable beam hypotheses", std::move(partial));
  }
  const TokenId term = provider.vocab().terminator_id;
  if (term != -1 && pool.front().suffix.back() == term) {
    state.beams.assign(1, pool.front());
    state.done = true;
    return;
  }
  std::vector<BeamHypothesis> next;
  for (BeamHypothesis& hyp : pool) {
    if (term != -1 && hyp.suffix.back() == term) continue;
    next.push_back(std::move(hyp));
    if (static_cast<int>(next.size()) == width) break;
  }
  if (next.empty()) {
    GenerationRecord partial;
    partial.prompt.assign(prompt.begin(), prompt.end());
    throw GenerationError("no extendable beam hypotheses", std::move(partial));
  }
  state.beams = std::move(next);
}

GenerationRecord finalize_beam(std::span<const TokenId> prompt,
                               const BeamState& state,
                               const DecoderConfig& cfg) {
  GenerationRecord rec;
  rec.prompt.assign(prompt.begin(), prompt.end());
  rec.seed = cfg.seed;
  const BeamHypothesis& winner = state.beams.front();
  rec.generated = winner.suffix;
  rec.terminated_by =
      state.done ? TerminatedBy::terminator : TerminatedBy::max_steps;
  for (std::size_t i = 0; i < winner.suffix.size(); ++i) {
    StepTrace tr;
    tr.step = static_cast<int>(i) + 1;
    tr.branch = Branch::beam;
    tr.token = winner.suffix[i];
    tr.model_calls = state.calls_per_step[i];
    rec.total_model_calls += tr.model_calls;
    rec.traces.push_back(std::move(tr));
  }
  return rec;
}

GenerationRecord generate(Strategy strategy,
                          const DistributionProvider& provider,
                          std::span<const TokenId> prompt,
                          const DecoderConfig& cfg, StepTimings* timings) {
  cfg.validate();
  if (prompt.empty()) throw ConfigError("prompt must not be empty");
  for (const TokenId t : prompt)
    if (!provider.vocab().contains(t))
      throw ConfigError("prompt token outside vocabulary");

  using clock = std::chrono::steady_clock;
  const auto record_time = [&](clock::time_point t0) {
    if (timings != nullptr)
      timings->micros.push_back(
          std::chrono::duration<double, std::micro>(clock::now() - t0)
              .count());
  };

  if (strategy == Strategy::beam) {
    BeamState st = beam_init(cfg);
    while (!st.done && st.steps() < cfg.max_steps) {
      const auto t0 = clock::now();
      step_beam(provider, prompt, st, cfg);
      record_time(t0);
    }
    return finalize_beam(prompt, st, cfg);
  }

  if (strategy == Strategy::contrastive &&
      !provider.supports_representations())
    throw CapabilityError(
        "contrastive search needs a provider with representations");

  GenerationRecord rec;
  rec.prompt.assign(prompt.begin(), prompt.end());
  rec.seed = cfg.seed;
  TokenSequence ctx(prompt);
  SampleRng rng(cfg.seed);

  std::vector<Representation> context_reps;
  if (strategy == Strategy::contrastive) {
    // One representation per prompt position, computed up front; session
    // accounting charges only the per-step candidate calls.
    context_reps.reserve(prompt.size());
    for (std::size_t j = 1; j <= prompt.size(); ++j)
      context_reps.push_back(provider.representation(prompt.subspan(0, j)));
  }

  const TokenId term = provider.vocab().terminator_id;
  for (int step = 1; step <= cfg.max_steps; ++step) {
    const auto t0 = clock::now();
    StepResult r;
    Representation accepted_rep;
    try {
      switch (strategy) {
        case Strategy::greedy:
          r = step_greedy(provider, ctx);
          break;
        case Strategy::momentum:
          r = step_momentum(provider, ctx, cfg);
          break;
        case Strategy::top_k_sample:
          r = step_sample(provider, ctx, cfg, SampleMode::top_k, rng);
          break;
        case Strategy::nucleus_sample:
          r = step_sample(provider, ctx, cfg, SampleMode::nucleus, rng);
          break;
        case Strategy::contrastive:
          r = step_contrastive(provider, ctx, cfg, context_reps,
                               &accepted_rep);
          break;
        case Strategy::beam:
          break;  // handled above
      }
    } catch (const ProviderError& e) {
      throw GenerationError(std::string("provider failed at step ") +
                                std::to_string(step) + ": " + e.what(),
                            std::move(rec));
    } catch (const std::out_of_range& e) {
      throw GenerationError(std::string("provider failed at step ") +
                                std::to_string(step) + ": " + e.what(),
                            std::move(rec));
    }
    ctx.append(r.token);
    if (strategy == Strategy::contrastive)
      context_reps.push_back(std::move(accepted_rep));
    r.trace.step = step;
    rec.generated.push_back(r.token);
    rec.total_model_calls += r.trace.model_calls;
    rec.traces.push_back(std::move(r.trace));
    record_time(t0);
    if (term != -1 && r.token == term) {
      rec.terminated_by = TerminatedBy::terminator;
      break;
    }
  }
  return rec;
}

}  // namespace modec
