#include "rice/synth.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <optional>
#include <unordered_map>
#include <utility>

#include "rice/errors.hpp"
#include "rice/eval.hpp"

namespace rice {

namespace {

// Engineering caps.  Row and pool counts bound the bitmask widths below;
// the rep cap turns runaway table growth into a resource-bound stop.
constexpr int kMaxRows = 64;
constexpr int kMaxPool = 32;
constexpr int kMaxNames = 16;
constexpr int kMaxRowSols = 64;
constexpr std::size_t kMaxStoredReps = 3'000'000;

struct TimeUp {};

// Externally observable content of one solution on a fixed row.  The only
// names a subprogram can output-bind during search are the out-mode name and
// iif's reserved `o`, and every residual constrains the out-mode name with a
// pool constant, so a pool-index bitmask captures the residual set.
struct Sol {
  double out_v = 0.0;
  double o_v = 0.0;
  std::uint32_t res = 0;
  bool has_out = false;
  bool has_o = false;
};

bool sol_equal(const Sol& a, const Sol& b) {
  return a.has_out == b.has_out && a.has_o == b.has_o && a.res == b.res &&
         (!a.has_out || a.out_v == b.out_v) && (!a.has_o || a.o_v == b.o_v);
}

double normalize_zero(double v) { return v == 0.0 ? 0.0 : v; }

enum class Outcome { produced, nothing, unbound };

// Node kinds in canonical rank order (matches the structural order of
// compare() over rebuilt programs).
enum Kind : std::uint8_t { kConst, kLtValue, kIif, kProj, kAnde, kOre };

struct Rep {
  std::uint32_t mask = 0;  // argument-name bits (+ the o bit)
  std::int32_t size = 0;
  Kind kind = kConst;
  bool condition_class = false;
  bool can_bind_out = false;  // some solution on some row binds the out-name
  std::uint32_t a = 0;        // leaves: name index; iif/proj: child rep; ande/ore: left rep
  std::uint32_t b = 0;        // leaves: pool index; iif: (then<<16)|else; ande/ore: right rep
  std::uint32_t sol_begin = 0;
  std::uint32_t cnt_begin = 0;
};

class Engine {
 public:
  Engine(const SynthesisJob& job, const SynthConfig& cfg) : job_(job), cfg_(cfg) {
    if (cfg_.max_size < 1) throw WellFormednessError("synthesis max_size must be at least 1");
    const auto& v = job_.valence;
    auto outs = v.out_names();
    if (outs.size() != 1)
      throw SignatureError("synthesis requires exactly one out-mode name");
    auto ins = v.in_names();
    if (ins.empty()) throw SignatureError("synthesis requires at least one in-mode name");
    out_name_ = outs.front();
    out_is_o_ = out_name_ == reserved_output();
    for (const auto& n : ins)
      if (n == reserved_output())
        throw SignatureError("'o' is reserved for iif and cannot be an in-mode name");

    names_ = v.names();
    if (static_cast<int>(names_.size()) > kMaxNames)
      throw WellFormednessError("valence exceeds the synthesizer's name limit");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      std::uint32_t bit = 1u << i;
      if (names_[i] == out_name_) out_bit_ = bit;
      else in_mask_ |= bit;
    }
    full_mask_ = in_mask_ | out_bit_;
    o_bit_ = out_is_o_ ? out_bit_ : (1u << names_.size());
    out_before_o_ = out_name_.str() < reserved_output().str();

    pool_ = job_.constants;
    if (static_cast<int>(pool_.size()) > kMaxPool)
      throw WellFormednessError("constant pool exceeds the synthesizer's limit");

    rows_ = static_cast<int>(job_.observables.size());
    if (rows_ > kMaxRows)
      throw WellFormednessError("observable count exceeds the synthesizer's limit");
    bool any_positive = false;
    row_in_.resize(rows_);
    expected_.resize(rows_);
    positive_.resize(rows_);
    for (int r = 0; r < rows_; ++r) {
      const Observable& obs = job_.observables[r];
      for (std::size_t i = 0; i < names_.size(); ++i)
        row_in_[r][i] = obs.fields.at(names_[i]);
      expected_[r] = obs.fields.at(out_name_);
      positive_[r] = obs.positive;
      any_positive = any_positive || obs.positive;
    }
    if (!any_positive)
      throw SignatureError("synthesis requires at least one positive observable");

    if (cfg_.time_budget > 0.0)
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(cfg_.time_budget));

    scratch_.resize(static_cast<std::size_t>(rows_) * kMaxRowSols);
    by_size_.resize(cfg_.max_size + 1);
  }

  SynthesisResult run(const std::function<bool(const Candidate&)>& on_candidate) {
    SynthesisResult result;
    try {
      for (int s = 1; s <= cfg_.max_size; ++s) {
        build_size(s);
        result.last_completed_size = s;
        if (!emit(result, on_candidate)) {
          result.exhaustion = Exhaustion::none;
          return result;
        }
      }
      result.exhaustion = Exhaustion::size_bound;
    } catch (const TimeUp&) {
      result.exhaustion = Exhaustion::time_bound;
    }
    return result;
  }

 private:
  // ---- clock / caps ----
  void tick() {
    if ((++ops_ & 1023u) == 0 && deadline_ &&
        std::chrono::steady_clock::now() > *deadline_)
      throw TimeUp{};
  }

  // ---- solution-content order, mirroring the evaluator's tie-break ----
  int cmp_sol(const Sol& x, const Sol& y) const {
    // Output entries in name order (the out-name and `o` are the only
    // possible outputs; which sorts first depends on the out-name's text).
    std::array<std::pair<int, double>, 2> ex{}, ey{};
    int nx = 0, ny = 0;
    auto push = [&](auto& arr, int& n, int which, double v) { arr[n++] = {which, v}; };
    if (out_before_o_) {
      if (x.has_out) push(ex, nx, 0, x.out_v);
      if (x.has_o) push(ex, nx, 1, x.o_v);
      if (y.has_out) push(ey, ny, 0, y.out_v);
      if (y.has_o) push(ey, ny, 1, y.o_v);
    } else {
      if (x.has_o) push(ex, nx, 0, x.o_v);
      if (x.has_out) push(ex, nx, 1, x.out_v);
      if (y.has_o) push(ey, ny, 0, y.o_v);
      if (y.has_out) push(ey, ny, 1, y.out_v);
    }
    for (int i = 0; i < std::min(nx, ny); ++i) {
      if (ex[i].first != ey[i].first) return ex[i].first < ey[i].first ? -1 : 1;
      if (ex[i].second != ey[i].second) return ex[i].second < ey[i].second ? -1 : 1;
    }
    if (nx != ny) return nx < ny ? -1 : 1;
    // Residuals all constrain the out-name; ascending pool index is
    // ascending bound, so compare the masks as sorted bound sequences.
    std::uint32_t ra = x.res, rb = y.res;
    while (ra && rb) {
      int ia = std::countr_zero(ra), ib = std::countr_zero(rb);
      if (ia != ib) return ia < ib ? -1 : 1;
      ra &= ra - 1;
      rb &= rb - 1;
    }
    if (ra != rb) return ra == 0 ? -1 : 1;
    return 0;
  }

  // ---- scratch management ----
  Sol* row_scratch(int r) { return scratch_.data() + static_cast<std::size_t>(r) * kMaxRowSols; }

  // Appends sol to row r's scratch unless an identical solution is already
  // there (dropping exact duplicates preserves every evaluation outcome).
  // Returns false when the row overflows the per-row cap.
  bool push_sol(int r, const Sol& sol) {
    Sol* row = row_scratch(r);
    int& n = scratch_cnt_[r];
    for (int i = 0; i < n; ++i)
      if (sol_equal(row[i], sol)) return true;
    if (n == kMaxRowSols) return false;
    row[n++] = sol;
    return true;
  }

  void reset_scratch() { scratch_cnt_.fill(0); }

  // ---- behaviour composition (mirrors eval.cpp on the job's rows) ----
  bool fill_leaf(Kind kind, int name_idx, int pool_idx) {
    reset_scratch();
    const bool is_out = (1u << name_idx) == out_bit_;
    const double c = pool_[pool_idx];
    for (int r = 0; r < rows_; ++r) {
      if (is_out) {
        Sol s;
        if (kind == kConst) {
          s.has_out = true;
          s.out_v = normalize_zero(c);
        } else {
          s.res = 1u << pool_idx;
        }
        if (!push_sol(r, s)) return false;
      } else {
        const double v = row_in_[r][name_idx];
        const bool holds = kind == kConst ? std::fabs(v - c) <= kValueTolerance : v < c;
        if (holds && !push_sol(r, Sol{})) return false;
      }
    }
    return true;
  }

  bool fill_iif(const Rep& cond, int then_idx, int else_idx) {
    reset_scratch();
    const double tv = normalize_zero(pool_[then_idx]);
    const double ev = normalize_zero(pool_[else_idx]);
    const std::uint8_t* counts = cnt_arena_.data() + cond.cnt_begin;
    for (int r = 0; r < rows_; ++r) {
      Sol s;
      if (out_is_o_) {
        s.has_out = true;
        s.out_v = counts[r] > 0 ? tv : ev;
      } else {
        s.has_o = true;
        s.o_v = counts[r] > 0 ? tv : ev;
      }
      if (!push_sol(r, s)) return false;
    }
    return true;
  }

  bool fill_proj(const Rep& inner) {
    reset_scratch();
    const std::uint8_t* counts = cnt_arena_.data() + inner.cnt_begin;
    const Sol* sols = sol_arena_.data() + inner.sol_begin;
    for (int r = 0; r < rows_; ++r) {
      for (int i = 0; i < counts[r]; ++i) {
        Sol s = *sols++;
        if (s.has_o) {
          s.has_out = true;
          s.out_v = s.o_v;
          s.has_o = false;
          s.o_v = 0.0;
        }
        if (!push_sol(r, s)) return false;
      }
    }
    return true;
  }

  bool fill_ande(const Rep& left, const Rep& right) {
    reset_scratch();
    const std::uint8_t* lc = cnt_arena_.data() + left.cnt_begin;
    const std::uint8_t* rc = cnt_arena_.data() + right.cnt_begin;
    const Sol* lbase = sol_arena_.data() + left.sol_begin;
    const Sol* rbase = sol_arena_.data() + right.sol_begin;
    for (int r = 0; r < rows_; ++r) {
      const Sol* ls = lbase;
      const Sol* rs = rbase;
      lbase += lc[r];
      rbase += rc[r];
      merged_.clear();
      for (int i = 0; i < lc[r]; ++i)
        for (int j = 0; j < rc[r]; ++j) {
          const Sol& a = ls[i];
          const Sol& b = rs[j];
          if (a.has_out && b.has_out && std::fabs(a.out_v - b.out_v) > kValueTolerance) continue;
          if (a.has_o && b.has_o && std::fabs(a.o_v - b.o_v) > kValueTolerance) continue;
          Sol m;
          m.has_out = a.has_out || b.has_out;
          m.out_v = a.has_out ? a.out_v : (b.has_out ? b.out_v : 0.0);
          m.has_o = a.has_o || b.has_o;
          m.o_v = a.has_o ? a.o_v : (b.has_o ? b.o_v : 0.0);
          m.res = a.res | b.res;
          merged_.emplace_back(i + j, m);
        }
      std::stable_sort(merged_.begin(), merged_.end(),
                       [this](const std::pair<int, Sol>& a, const std::pair<int, Sol>& b) {
                         if (a.first != b.first) return a.first < b.first;
                         return cmp_sol(a.second, b.second) < 0;
                       });
      for (const auto& [rank, sol] : merged_)
        if (!push_sol(r, sol)) return false;
    }
    return true;
  }

  bool fill_ore(const Rep& left, const Rep& right) {
    reset_scratch();
    const std::uint8_t* lc = cnt_arena_.data() + left.cnt_begin;
    const std::uint8_t* rc = cnt_arena_.data() + right.cnt_begin;
    const Sol* lbase = sol_arena_.data() + left.sol_begin;
    const Sol* rbase = sol_arena_.data() + right.sol_begin;
    for (int r = 0; r < rows_; ++r) {
      for (int i = 0; i < lc[r]; ++i)
        if (!push_sol(r, *lbase++)) return false;
      for (int j = 0; j < rc[r]; ++j)
        if (!push_sol(r, *rbase++)) return false;
    }
    return true;
  }

  // ---- candidate checking over the scratch behaviour ----
  Outcome row_outcome(int r, double* produced) const {
    const Sol* row = scratch_.data() + static_cast<std::size_t>(r) * kMaxRowSols;
    bool incomplete = false;
    for (int i = 0; i < scratch_cnt_[r]; ++i) {
      const Sol& s = row[i];
      if (s.has_out) {
        if (s.res != 0 && !(s.out_v < pool_[std::countr_zero(s.res)])) continue;
        if (s.has_o && !out_is_o_) {
          incomplete = true;  // `o` escaping means the rep is unyieldable anyway
          continue;
        }
        *produced = s.out_v;
        return Outcome::produced;
      }
      incomplete = true;
    }
    return incomplete ? Outcome::unbound : Outcome::nothing;
  }

  bool scratch_satisfies() const {
    for (int r = 0; r < rows_; ++r) {
      double v = 0.0;
      Outcome oc = row_outcome(r, &v);
      bool produced_expected = oc == Outcome::produced && std::fabs(v - expected_[r]) <= kValueTolerance;
      if (positive_[r] != produced_expected) return false;
    }
    return true;
  }

  // ---- program reconstruction from rep recipes ----
  Program rebuild(std::uint32_t id) const {
    const Rep& rep = reps_[id];
    switch (rep.kind) {
      case kConst:
        return Program::constant(names_[rep.a], pool_[rep.b]);
      case kLtValue:
        return Program::lt_value(names_[rep.a], pool_[rep.b]);
      case kIif:
        return Program::iif(rebuild(rep.a), pool_[rep.b >> 16], pool_[rep.b & 0xffffu]);
      case kProj:
        return Program::proj(rebuild(rep.a), {{reserved_output(), out_name_}});
      case kAnde: {
        // Conjunction evaluation is order-symmetric, so emit the children in
        // canonical structural order regardless of discovery orientation.
        Program l = rebuild(rep.a);
        Program r = rebuild(rep.b);
        return compare(l, r) <= 0 ? Program::ande(std::move(l), std::move(r))
                                  : Program::ande(std::move(r), std::move(l));
      }
      case kOre:
        return Program::ore(rebuild(rep.a), rebuild(rep.b));
    }
    throw Error("corrupt synthesis table");
  }

  // Least total size of any stream-eligible program containing a subterm
  // with this mask: each missing in-name costs a leaf plus a combining node;
  // a bound `o` needs one proj; a program binding neither `o` nor the
  // out-name needs a two-node binding wrapper (iif+proj or join+leaf).
  int lb(int size, std::uint32_t mask) const {
    int missing = std::popcount(in_mask_ & ~mask);
    int extra;
    if (mask & out_bit_) extra = 0;
    else if (!out_is_o_ && (mask & o_bit_)) extra = 1;
    else extra = out_is_o_ ? 1 : 2;
    return size + 2 * missing + extra;
  }

  bool viable(int size, std::uint32_t mask) const { return lb(size, mask) <= cfg_.max_size; }

  // ---- dedup + storage ----
  void consider(std::uint32_t mask, Kind kind, bool condition_class, int size,
                std::uint32_t a, std::uint32_t b) {
    tick();
    // Yield check: a program must cover exactly the valence names.  This
    // happens before dedup so that syntactic variants of an already-seen
    // behaviour still reach the stream.
    if (mask == full_mask_ && scratch_satisfies()) {
      Rep probe{mask, size, kind, condition_class, false, a, b, 0, 0};
      pending_.push_back(probe);
    }

    // Reps at the size bound have nothing left to compose into, and reps
    // whose completion bound exceeds it can't reach the stream at all.
    if (size >= cfg_.max_size || !viable(size, mask)) return;

    std::uint64_t h = hash_u32(1469598103934665603ull, mask);
    bool can_bind_out = false;
    for (int r = 0; r < rows_; ++r) {
      h = hash_u32(h, static_cast<std::uint32_t>(scratch_cnt_[r]));
      const Sol* row = scratch_.data() + static_cast<std::size_t>(r) * kMaxRowSols;
      for (int i = 0; i < scratch_cnt_[r]; ++i) {
        const Sol& s = row[i];
        h = hash_u32(h, static_cast<std::uint32_t>((s.has_out ? 1 : 0) | (s.has_o ? 2 : 0)));
        h = hash_double(h, s.out_v);
        h = hash_double(h, s.o_v);
        h = hash_u32(h, s.res);
        can_bind_out = can_bind_out || s.has_out;
      }
    }
    auto& bucket = dedup_[h];
    for (std::uint32_t other : bucket)
      if (matches_scratch(other, mask)) return;  // observationally equivalent rep exists

    if (reps_.size() >= kMaxStoredReps) throw TimeUp{};
    Rep rep{mask, size, kind, condition_class, can_bind_out, a, b,
            static_cast<std::uint32_t>(sol_arena_.size()),
            static_cast<std::uint32_t>(cnt_arena_.size())};
    for (int r = 0; r < rows_; ++r) {
      cnt_arena_.push_back(static_cast<std::uint8_t>(scratch_cnt_[r]));
      const Sol* row = scratch_.data() + static_cast<std::size_t>(r) * kMaxRowSols;
      sol_arena_.insert(sol_arena_.end(), row, row + scratch_cnt_[r]);
    }
    bucket.push_back(static_cast<std::uint32_t>(reps_.size()));
    by_size_[size].push_back(static_cast<std::uint32_t>(reps_.size()));
    reps_.push_back(rep);
  }

  static std::uint64_t hash_u32(std::uint64_t h, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
    return h;
  }

  static std::uint64_t hash_double(std::uint64_t h, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, sizeof v);
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
    return h;
  }

  bool matches_scratch(std::uint32_t rep_id, std::uint32_t mask) const {
    const Rep& rep = reps_[rep_id];
    if (rep.mask != mask) return false;
    const std::uint8_t* counts = cnt_arena_.data() + rep.cnt_begin;
    const Sol* sols = sol_arena_.data() + rep.sol_begin;
    for (int r = 0; r < rows_; ++r) {
      if (counts[r] != scratch_cnt_[r]) return false;
      const Sol* row = scratch_.data() + static_cast<std::size_t>(r) * kMaxRowSols;
      for (int i = 0; i < counts[r]; ++i)
        if (!sol_equal(sols[i], row[i])) return false;
      sols += counts[r];
    }
    return true;
  }

  // ---- size-class construction ----
  void build_size(int s) {
    if (s == 1) {
      for (std::size_t n = 0; n < names_.size(); ++n) {
        if (names_[n] == out_name_ && out_is_o_) continue;  // leaves may not use `o`
        for (std::size_t c = 0; c < pool_.size(); ++c)
          if (fill_leaf(kConst, static_cast<int>(n), static_cast<int>(c)))
            consider(1u << n, kConst, true, 1, static_cast<std::uint32_t>(n),
                     static_cast<std::uint32_t>(c));
        for (std::size_t c = 0; c < pool_.size(); ++c)
          if (fill_leaf(kLtValue, static_cast<int>(n), static_cast<int>(c)))
            consider(1u << n, kLtValue, true, 1, static_cast<std::uint32_t>(n),
                     static_cast<std::uint32_t>(c));
      }
      return;
    }

    // iif over size-(s-1) conditions; branch constants come from the pool.
    for (std::uint32_t cid : by_size_[s - 1]) {
      const Rep cond = reps_[cid];
      if (!cond.condition_class || (cond.mask & ~in_mask_) != 0) continue;
      std::uint32_t mask = cond.mask | o_bit_;
      if (!worth_filling(s, mask)) continue;
      for (std::size_t t = 0; t < pool_.size(); ++t)
        for (std::size_t e = 0; e < pool_.size(); ++e) {
          tick();
          if (fill_iif(cond, static_cast<int>(t), static_cast<int>(e)))
            consider(mask, kIif, false, s, cid,
                     static_cast<std::uint32_t>((t << 16) | e));
        }
    }

    // proj: the single renaming form {o -> out-name} over o-binding reps.
    if (!out_is_o_) {
      for (std::uint32_t iid : by_size_[s - 1]) {
        const Rep inner = reps_[iid];
        if ((inner.mask & o_bit_) == 0 || (inner.mask & out_bit_) != 0) continue;
        std::uint32_t mask = (inner.mask & ~o_bit_) | out_bit_;
        if (!worth_filling(s, mask)) continue;
        tick();
        if (fill_proj(inner))
          consider(mask, kProj, inner.condition_class, s, iid, 0);
      }
    }

    // ande then ore over size splits sa + sb = s - 1.  All conjunctions are
    // built before any disjunction so that when the two collide on behaviour,
    // the representative follows the structural kind order.
    for (int sa = 1; sa <= s - 2; ++sa) {
      int sb = s - 1 - sa;
      if (sa > sb) break;
      for (std::uint32_t ia : by_size_[sa]) {
        for (std::uint32_t ib : by_size_[sb]) {
          if (sa == sb && ib < ia) continue;  // one orientation per unordered pair
          const Rep a = reps_[ia];
          const Rep b = reps_[ib];
          tick();
          std::uint32_t mask = a.mask | b.mask;
          if (!out_is_o_ && (mask & o_bit_) != 0 && (mask & out_bit_) != 0) continue;
          if (!worth_filling(s, mask)) continue;
          // Conjunction prune: skip when one side already binds the
          // out-name and the other adds no still-needed name.
          bool useless = (a.can_bind_out && (b.mask & ~a.mask & (full_mask_ | o_bit_)) == 0) ||
                         (b.can_bind_out && (a.mask & ~b.mask & (full_mask_ | o_bit_)) == 0);
          if (!useless && fill_ande(a, b))
            consider(mask, kAnde, a.condition_class && b.condition_class, s, ia, ib);
        }
      }
    }
    if (!cfg_.enable_ore) return;
    for (int sa = 1; sa <= s - 2; ++sa) {
      int sb = s - 1 - sa;
      if (sa > sb) break;
      for (std::uint32_t ia : by_size_[sa]) {
        for (std::uint32_t ib : by_size_[sb]) {
          if (sa == sb && ib < ia) continue;
          if (ia == ib) continue;  // ore(p,p) repeats p's stream behaviour
          const Rep a = reps_[ia];
          const Rep b = reps_[ib];
          tick();
          std::uint32_t mask = a.mask | b.mask;
          if (!out_is_o_ && (mask & o_bit_) != 0 && (mask & out_bit_) != 0) continue;
          if (!worth_filling(s, mask)) continue;
          if (fill_ore(a, b))
            consider(mask, kOre, a.condition_class && b.condition_class, s, ia, ib);
          if (fill_ore(b, a))
            consider(mask, kOre, a.condition_class && b.condition_class, s, ib, ia);
        }
      }
    }
  }

  // A composition is worth evaluating if it could either reach the stream at
  // this exact size (full coverage) or be stored for later composition.
  bool worth_filling(int s, std::uint32_t mask) const {
    if (mask == full_mask_) return true;
    return s < cfg_.max_size && viable(s, mask);
  }

  // Sorts the size class's surviving candidates structurally, re-checks each
  // with the reference evaluator, and streams them.  Returns false to stop.
  bool emit(SynthesisResult& result, const std::function<bool(const Candidate&)>& on_candidate) {
    if (pending_.empty()) return true;
    std::vector<Candidate> batch;
    batch.reserve(pending_.size());
    for (const Rep& probe : pending_) {
      Program p = probe.kind == kConst || probe.kind == kLtValue
                      ? rebuild_leaf(probe)
                      : rebuild_composite(probe);
      if (satisfies(p, job_)) batch.push_back(Candidate{std::move(p), probe.size});
    }
    pending_.clear();
    std::sort(batch.begin(), batch.end(),
              [](const Candidate& x, const Candidate& y) { return compare(x.program, y.program) < 0; });
    for (auto& cand : batch) {
      result.candidates.push_back(cand);
      bool want_more = true;
      if (on_candidate) want_more = on_candidate(cand);
      if (static_cast<int>(result.candidates.size()) >= cfg_.max_programs) return false;
      if (!want_more) return false;
    }
    return true;
  }

  Program rebuild_leaf(const Rep& probe) const {
    return probe.kind == kConst ? Program::constant(names_[probe.a], pool_[probe.b])
                                : Program::lt_value(names_[probe.a], pool_[probe.b]);
  }

  Program rebuild_composite(const Rep& probe) const {
    switch (probe.kind) {
      case kIif:
        return Program::iif(rebuild(probe.a), pool_[probe.b >> 16], pool_[probe.b & 0xffffu]);
      case kProj:
        return Program::proj(rebuild(probe.a), {{reserved_output(), out_name_}});
      case kAnde:
        return Program::ande(rebuild(probe.a), rebuild(probe.b));
      case kOre:
        return Program::ore(rebuild(probe.a), rebuild(probe.b));
      default:
        throw Error("corrupt synthesis candidate");
    }
  }

  const SynthesisJob& job_;
  SynthConfig cfg_;

  std::vector<ArgName> names_;
  ArgName out_name_{"go"};
  bool out_is_o_ = false;
  bool out_before_o_ = false;
  std::uint32_t in_mask_ = 0, out_bit_ = 0, o_bit_ = 0, full_mask_ = 0;
  std::vector<double> pool_;
  int rows_ = 0;
  std::vector<std::array<double, kMaxNames>> row_in_;
  std::vector<double> expected_;
  std::vector<bool> positive_;

  std::vector<Rep> reps_;
  std::vector<Sol> sol_arena_;
  std::vector<std::uint8_t> cnt_arena_;
  std::vector<std::vector<std::uint32_t>> by_size_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> dedup_;
  std::vector<Rep> pending_;  // this size's yield probes, pre-sort

  std::vector<Sol> scratch_;
  std::array<int, kMaxRows> scratch_cnt_{};
  std::vector<std::pair<int, Sol>> merged_;

  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint64_t ops_ = 0;
};

}  // namespace

SynthesisResult enumerate(const SynthesisJob& job, const SynthConfig& cfg,
                          const std::function<bool(const Candidate&)>& on_candidate) {
  Engine engine(job, cfg);
  return engine.run(on_candidate);
}

SynthesisResult first_explanation(const SynthesisJob& job, const SynthConfig& cfg) {
  SynthConfig head = cfg;
  head.max_programs = 1;
  return enumerate(job, head);
}

}  // namespace rice
