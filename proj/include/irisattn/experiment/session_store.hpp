#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "irisattn/common/error.hpp"
#include "irisattn/eval/decisions.hpp"
#include "irisattn/experiment/event_log.hpp"
#include "irisattn/experiment/pair.hpp"
#include "irisattn/gaze/log_parser.hpp"

namespace irisattn::experiment {

enum class SchedulingPolicy {
  kIndependent,  // every session samples from the whole pool
  kDisjoint,     // a pair is scheduled in at most one session
};

struct SessionConfig {
  std::size_t default_k = 20;
  std::uint64_t default_seed = 0;
  bool balanced = true;
  SchedulingPolicy policy = SchedulingPolicy::kIndependent;
};

/// Live state of one examiner session. Answered pairs are always the
/// prefix schedule[0, cursor).
struct SessionState {
  std::string session_id;
  std::string subject_id;
  std::uint64_t seed = 0;
  std::vector<std::string> schedule;
  std::size_t cursor = 0;
  std::vector<Verdict> verdicts;     // one per answered pair
  std::vector<double> elapsed_ms;    // one per answered pair

  bool complete() const noexcept { return cursor >= schedule.size(); }
  bool operator==(const SessionState&) const = default;
};

struct DecisionAck {
  std::string session_id;
  std::string pair_id;
  std::size_t index = 0;
  std::size_t cursor = 0;
};

struct PairOutcome {
  std::string pair_id;
  Verdict verdict;
  Verdict ground_truth;
  double elapsed_ms;
  bool correct() const noexcept { return verdict == ground_truth; }
};

struct SessionReport {
  std::string session_id;
  std::string subject_id;
  std::size_t scheduled = 0;
  std::size_t answered = 0;
  std::optional<double> accuracy;         // absent when nothing is answered
  std::optional<double> mean_elapsed_ms;  // likewise
  std::vector<PairOutcome> pairs;
};

/// Optional pointer trace sent with a decision: a gaze-schema CSV plus the
/// panel geometry the client rendered.
struct PointerTrace {
  std::string csv;
  nlohmann::json geometry;
};

namespace detail {

/// Uniform index in [0, n) from a 64-bit engine by rejection, so schedules
/// do not depend on the standard library's distribution implementation.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % bound);
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

template <typename T>
std::vector<T> sample(std::vector<T> v, std::size_t k, std::mt19937_64& rng) {
  for (std::size_t i = 0; i < k; ++i) std::swap(v[i], v[i + uniform_index(rng, v.size() - i)]);
  v.resize(k);
  return v;
}

inline std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace detail

/// Thrown by a fault-injection hook to simulate a process crash between a
/// durable append and the acknowledgement.
class InjectedCrash : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Examiner sessions backed by an append-only event log. The log is the
/// source of truth: constructing a store replays it, and reports are
/// computed from it rather than from memory.
///
/// Different sessions proceed concurrently; decisions within one session are
/// serialized by a per-session mutex held across the append.
class SessionStore {
 public:
  using AfterAppendHook = std::function<void(const nlohmann::json&)>;

  SessionStore(std::vector<PairSpec> pool, std::filesystem::path log_path, SessionConfig cfg = {}, bool sync = true)
      : cfg_(cfg), log_(std::move(log_path), sync) {
    for (auto& p : pool) {
      p.validate();
      const std::string id = p.pair_id;
      if (!pool_.emplace(id, std::move(p)).second) throw Error(ErrorCode::kDomain, "duplicate pair id " + id);
      pool_order_.push_back(id);
    }
    replay();
  }

  /// Called after a decision is durable and before memory is updated.
  void set_after_append_hook(AfterAppendHook hook) { after_append_ = std::move(hook); }

  const SessionConfig& config() const noexcept { return cfg_; }
  const EventLog& log() const noexcept { return log_; }

  std::optional<PairSpec> find_pair(const std::string& pair_id) const {
    const auto it = pool_.find(pair_id);
    if (it == pool_.end()) return std::nullopt;
    return it->second;
  }

  /// Samples k pairs without replacement (balanced genuine/impostor within
  /// one when configured), shuffles them and persists the new session.
  SessionState create_session(const std::string& subject_id, std::optional<std::size_t> k = {},
                              std::optional<std::uint64_t> seed = {}) {
    if (subject_id.empty()) throw Error(ErrorCode::kDomain, "subject id must be nonempty");
    std::unique_lock lock(sessions_mu_);
    const std::size_t count = k.value_or(cfg_.default_k);
    const std::uint64_t used_seed = seed.value_or(cfg_.default_seed + sessions_.size());
    if (count == 0) throw Error(ErrorCode::kDomain, "k must be >= 1");

    std::vector<std::string> genuine, impostor, all;
    for (const auto& id : pool_order_) {
      if (cfg_.policy == SchedulingPolicy::kDisjoint && scheduled_.count(id)) continue;
      (pool_.at(id).ground_truth == Verdict::kGenuine ? genuine : impostor).push_back(id);
      all.push_back(id);
    }
    if (all.size() < count) {
      throw Error(ErrorCode::kCapacity, "pool has " + std::to_string(all.size()) + " available pairs, need " +
                                            std::to_string(count));
    }
    std::mt19937_64 rng(used_seed);
    std::vector<std::string> schedule;
    if (cfg_.balanced) {
      std::size_t n_gen = count / 2;
      if (count % 2 == 1 && (rng() & 1u)) ++n_gen;
      std::size_t n_imp = count - n_gen;
      // Odd k: the extra slot may go to whichever class can still cover it.
      if (count % 2 == 1) {
        if (n_gen > genuine.size() && n_imp + 1 <= impostor.size()) --n_gen, ++n_imp;
        else if (n_imp > impostor.size() && n_gen + 1 <= genuine.size()) ++n_gen, --n_imp;
      }
      if (n_gen > genuine.size() || n_imp > impostor.size()) {
        throw Error(ErrorCode::kCapacity, "pool cannot supply a balanced schedule of " + std::to_string(count));
      }
      schedule = detail::sample(genuine, n_gen, rng);
      auto imp = detail::sample(impostor, n_imp, rng);
      schedule.insert(schedule.end(), imp.begin(), imp.end());
    } else {
      schedule = detail::sample(all, count, rng);
    }
    detail::shuffle(schedule, rng);

    auto state = std::make_shared<Session>();
    state->state.session_id = make_session_id(sessions_.size() + 1);
    state->state.subject_id = subject_id;
    state->state.seed = used_seed;
    state->state.schedule = std::move(schedule);

    log_.append({{"event", "session_created"},
                 {"session_id", state->state.session_id},
                 {"subject_id", subject_id},
                 {"seed", used_seed},
                 {"k", count},
                 {"schedule", state->state.schedule},
                 {"ts", detail::now_ms()}});
    for (const auto& id : state->state.schedule) scheduled_.insert(id);
    sessions_.emplace(state->state.session_id, state);
    session_order_.push_back(state->state.session_id);
    return state->state;
  }

  /// The pair at the cursor, or nullopt once the session is complete.
  std::optional<PairSpec> next_pair(const std::string& session_id) const {
    auto s = session(session_id);
    std::lock_guard lock(s->mu);
    if (s->state.complete()) return std::nullopt;
    return pool_.at(s->state.schedule[s->state.cursor]);
  }

  SessionState state(const std::string& session_id) const {
    auto s = session(session_id);
    std::lock_guard lock(s->mu);
    return s->state;
  }

  std::vector<SessionState> all_states() const {
    std::vector<std::shared_ptr<Session>> list;
    {
      std::shared_lock lock(sessions_mu_);
      for (const auto& id : session_order_) list.push_back(sessions_.at(id));
    }
    std::vector<SessionState> out;
    for (const auto& s : list) {
      std::lock_guard lock(s->mu);
      out.push_back(s->state);
    }
    return out;
  }

  /// Appends the decision durably, then advances the cursor.
  DecisionAck record_decision(const std::string& session_id, const std::string& pair_id, Verdict verdict,
                              double elapsed_ms, const std::optional<PointerTrace>& trace = {}) {
    auto s = session(session_id);
    if (!(elapsed_ms >= 0.0)) throw Error(ErrorCode::kDomain, "elapsed_ms must be >= 0");
    if (trace) gaze::parse_gaze_log(trace->csv);

    std::lock_guard lock(s->mu);
    auto& st = s->state;
    for (std::size_t i = 0; i < st.cursor; ++i) {
      if (st.schedule[i] == pair_id) throw Error(ErrorCode::kConflict, "pair " + pair_id + " already answered");
    }
    if (st.complete()) throw Error(ErrorCode::kSequence, "session " + session_id + " is complete");
    if (st.schedule[st.cursor] != pair_id) {
      throw Error(ErrorCode::kSequence, "expected pair " + st.schedule[st.cursor] + ", got " + pair_id);
    }
    const PairSpec& pair = pool_.at(pair_id);
    nlohmann::json event = {{"event", "decision"},
                            {"session_id", session_id},
                            {"index", st.cursor},
                            {"pair_id", pair_id},
                            {"source", eval::human_source(st.subject_id)},
                            {"verdict", eval::to_string(verdict)},
                            {"ground_truth", eval::to_string(pair.ground_truth)},
                            {"pmi_days", pair.pmi_days()},
                            {"elapsed_ms", elapsed_ms}};
    if (trace) event["trace"] = {{"source", "pointer"}, {"csv", trace->csv}, {"geometry", trace->geometry}};
    event["ts"] = detail::now_ms();
    log_.append(event);
    if (after_append_) after_append_(event);

    st.verdicts.push_back(verdict);
    st.elapsed_ms.push_back(elapsed_ms);
    ++st.cursor;
    return {session_id, pair_id, st.cursor - 1, st.cursor};
  }

  /// Report computed from the event log alone.
  SessionReport session_report(const std::string& session_id) const {
    session(session_id);  // not-found check
    return report_from_log(log_.read_all(), session_id);
  }

  static SessionReport report_from_log(const std::vector<nlohmann::json>& events, const std::string& session_id) {
    SessionReport r;
    r.session_id = session_id;
    bool found = false;
    double elapsed_total = 0.0;
    std::size_t correct = 0;
    for (const auto& e : events) {
      if (e.value("session_id", "") != session_id) continue;
      const auto kind = e.value("event", "");
      if (kind == "session_created") {
        found = true;
        r.subject_id = e.at("subject_id").get<std::string>();
        r.scheduled = e.at("schedule").size();
      } else if (kind == "decision") {
        const auto rec = eval::decision_from_json(e);
        r.pairs.push_back({rec.pair_id, rec.verdict, rec.ground_truth, rec.elapsed_ms});
        elapsed_total += rec.elapsed_ms;
        correct += rec.correct();
      }
    }
    if (!found) throw Error(ErrorCode::kNotFound, "session " + session_id);
    r.answered = r.pairs.size();
    if (r.answered > 0) {
      r.accuracy = static_cast<double>(correct) / static_cast<double>(r.answered);
      r.mean_elapsed_ms = elapsed_total / static_cast<double>(r.answered);
    }
    return r;
  }

  static std::string make_session_id(std::size_t n) {
    std::string digits = std::to_string(n);
    if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
    return "s" + digits;
  }

 private:
  struct Session {
    mutable std::mutex mu;
    SessionState state;
  };

  std::shared_ptr<Session> session(const std::string& session_id) const {
    std::shared_lock lock(sessions_mu_);
    const auto it = sessions_.find(session_id);
    if (it == sessions_.end()) throw Error(ErrorCode::kNotFound, "session " + session_id);
    return it->second;
  }

  void replay() {
    const auto events = log_.read_all();
    for (std::size_t i = 0; i < events.size(); ++i) {
      const auto& e = events[i];
      const std::string where = "event log record " + std::to_string(i + 1) + ": ";
      const auto kind = e.value("event", "");
      if (kind == "session_created") {
        auto s = std::make_shared<Session>();
        s->state.session_id = e.at("session_id").get<std::string>();
        s->state.subject_id = e.at("subject_id").get<std::string>();
        s->state.seed = e.at("seed").get<std::uint64_t>();
        s->state.schedule = e.at("schedule").get<std::vector<std::string>>();
        for (const auto& id : s->state.schedule) {
          if (!pool_.count(id)) throw Error(ErrorCode::kFormat, where + "unknown pair " + id);
          scheduled_.insert(id);
        }
        if (!sessions_.emplace(s->state.session_id, s).second) {
          throw Error(ErrorCode::kConflict, where + "session " + s->state.session_id + " created twice");
        }
        session_order_.push_back(s->state.session_id);
      } else if (kind == "decision") {
        const auto id = e.at("session_id").get<std::string>();
        const auto it = sessions_.find(id);
        if (it == sessions_.end()) throw Error(ErrorCode::kFormat, where + "decision for unknown session " + id);
        auto& st = it->second->state;
        const auto index = e.at("index").get<std::size_t>();
        const auto pair_id = e.at("pair_id").get<std::string>();
        if (index != st.cursor || st.complete() || st.schedule[st.cursor] != pair_id) {
          throw Error(ErrorCode::kConflict, where + "decision out of sequence for session " + id);
        }
        const auto verdict = eval::parse_verdict(e.at("verdict").get<std::string>());
        if (!verdict) throw Error(ErrorCode::kFormat, where + "bad verdict");
        st.verdicts.push_back(*verdict);
        st.elapsed_ms.push_back(e.at("elapsed_ms").get<double>());
        ++st.cursor;
      }
    }
  }

  SessionConfig cfg_;
  std::unordered_map<std::string, PairSpec> pool_;
  std::vector<std::string> pool_order_;
  EventLog log_;
  AfterAppendHook after_append_;

  mutable std::shared_mutex sessions_mu_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
  std::vector<std::string> session_order_;
  std::set<std::string> scheduled_;
};

}  // namespace irisattn::experiment
