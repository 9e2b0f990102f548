#include "linvol/induct.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "linvol/rauzy.hpp"
#include "linvol/reduce.hpp"

namespace linvol {

LinearInvolution::LinearInvolution(GenPerm perm, std::vector<Rat> lambda)
    : perm_(std::move(perm)), lambda_(std::move(lambda)) {
  check_balance(perm_, lambda_);
  total_ = 0;
  for (int p = 0; p < perm_.top_len(); ++p) total_ += lambda_[perm_.word_at(p)];
}

Rat LinearInvolution::left_of_position(int pos) const {
  Rat left(0);
  int start = pos < perm_.top_len() ? 0 : perm_.top_len();
  for (int p = start; p < pos; ++p) left += lambda_[perm_.word_at(p)];
  return left;
}

namespace {

int row_begin(const GenPerm& gp, int row) { return row == 0 ? 0 : gp.top_len(); }
int row_end(const GenPerm& gp, int row) { return row == 0 ? gp.top_len() : gp.size(); }

}  // namespace

EvalResult eval_tilde(const LinearInvolution& t, const Rat& x, int row) {
  const GenPerm& gp = t.perm();
  if (row != 0 && row != 1) throw OutOfRangeError("row must be 0 or 1");
  if (x <= 0 || x >= t.total_length()) throw OutOfRangeError("point outside (0, L)");
  Rat left(0);
  int pos = -1;
  Rat pos_left(0);
  for (int p = row_begin(gp, row); p < row_end(gp, row); ++p) {
    if (x == left) return EvalSingular{p, row};
    Rat right = left + t.length_of_position(p);
    if (x < right) {
      pos = p;
      pos_left = left;
      break;
    }
    left = right;
  }
  if (pos < 0) throw OutOfRangeError("point outside (0, L)");
  int q = gp.twin(pos);
  Rat q_left = t.left_of_position(q);
  bool same_row = (q < gp.top_len()) == (pos < gp.top_len());
  if (same_row) {
    Rat q_right = q_left + t.length_of_position(q);
    return EvalPoint{q_right - (x - pos_left), row};
  }
  return EvalPoint{q_left + (x - pos_left), 1 - row};
}

EvalResult eval(const LinearInvolution& t, const Rat& x, int row) {
  EvalResult r = eval_tilde(t, x, row);
  if (auto* p = std::get_if<EvalPoint>(&r)) p->row = 1 - p->row;
  return r;
}

StepOutcome step(const LinearInvolution& t, bool renormalize) {
  const GenPerm& gp = t.perm();
  StepOutcome out;
  LetterId top_last = gp.word_at(gp.top_len() - 1);
  LetterId bot_last = gp.word_at(gp.size() - 1);
  const Rat& a = t.lambda()[top_last];
  const Rat& b = t.lambda()[bot_last];
  if (a == b) {
    out.reason = StepOutcome::Blocked::ConnectionLength0;
    return out;
  }
  int type = a > b ? 0 : 1;
  out.type = type;
  out.winner = type == 0 ? top_last : bot_last;
  out.loser = type == 0 ? bot_last : top_last;
  auto next_perm = r_eps(gp, type);
  if (!next_perm) {
    out.reason = StepOutcome::Blocked::CombinatorialUndefined;
    return out;
  }
  std::vector<Rat> lambda = t.lambda();
  lambda[out.winner] -= lambda[out.loser];
  if (renormalize) {
    Rat total(0);
    for (int p = 0; p < next_perm->top_len(); ++p) total += lambda[next_perm->word_at(p)];
    for (Rat& v : lambda) v /= total;
  }
  out.next = LinearInvolution(std::move(*next_perm), std::move(lambda));
  return out;
}

InductionTrace iterate(const LinearInvolution& seed, int max_steps, const Rat& min_length) {
  InductionTrace trace;
  auto irreducible_state = [](const GenPerm& gp) {
    return gp.convention_ok() && !find_reduction(gp).has_value();
  };
  LinearInvolution cur = seed;
  bool irreducible_seen = irreducible_state(cur.perm());
  if (irreducible_seen) trace.first_irreducible_index = 0;
  for (int n = 0; n < max_steps; ++n) {
    if (cur.total_length() <= min_length) {
      trace.termination = Termination::StepsExhausted;
      return trace;
    }
    StepOutcome out = step(cur);
    if (!out.next) {
      trace.termination = *out.reason == StepOutcome::Blocked::ConnectionLength0
                              ? Termination::ConnectionLength0
                              : Termination::BothUndefined;
      return trace;
    }
    cur = std::move(*out.next);
    TraceStep ts{cur.perm().canonical(), out.type, cur.perm().letter_name(out.winner),
                 cur.perm().letter_name(out.loser), cur.total_length()};
    if (!trace.steps.empty() && ts.length_after >= trace.steps.back().length_after)
      throw InternalError("interval lengths must strictly decrease");
    bool irr = irreducible_state(cur.perm());
    if (irreducible_seen && !irr)
      throw InternalError("irreducibility must persist along an induction trace");
    if (irr && !irreducible_seen) {
      irreducible_seen = true;
      trace.first_irreducible_index = static_cast<int>(trace.steps.size()) + 1;
    }
    trace.steps.push_back(std::move(ts));
  }
  trace.termination = Termination::StepsExhausted;
  return trace;
}

std::string trace_jsonl(const InductionTrace& trace) {
  std::ostringstream os;
  int n = 1;
  for (const TraceStep& ts : trace.steps) {
    os << "{\"n\":" << n++ << ",\"pi\":\"" << ts.pi.str() << "\",\"type\":" << ts.type
       << ",\"winner\":\"" << ts.winner << "\",\"loser\":\"" << ts.loser << "\",\"length_num\":\""
       << boost::multiprecision::numerator(ts.length_after).str() << "\",\"length_den\":\""
       << boost::multiprecision::denominator(ts.length_after).str() << "\"}\n";
  }
  return os.str();
}

namespace {

struct Piece {
  Rat a, b;    // current open interval
  int row;     // current row label
  int sign;    // current = sign * start + shift
  Rat shift;
  long long steps;
};

}  // namespace

ReturnMap first_return_iem(const LinearInvolution& t, int row, long long max_iter) {
  const GenPerm& gp = t.perm();
  if (row != 0 && row != 1) throw OutOfRangeError("row must be 0 or 1");
  const Rat& L = t.total_length();

  // breakpoints of both rows, used to cut pieces into isometric strips
  std::vector<std::vector<Rat>> marks(2);
  for (int r : {0, 1}) {
    Rat left(0);
    for (int p = row_begin(gp, r); p < row_end(gp, r); ++p) {
      if (left > 0) marks[r].push_back(left);
      left += t.length_of_position(p);
    }
  }

  std::deque<Piece> work;
  {
    Rat left(0);
    for (int p = row_begin(gp, row); p < row_end(gp, row); ++p) {
      Rat right = left + t.length_of_position(p);
      work.push_back(Piece{left, right, row, 1, Rat(0), 0});
      left = right;
    }
  }

  struct Done {
    Rat a, b;   // start interval on the chosen row
    Rat image;  // image of a under the return map
  };
  std::vector<Done> done;

  long long budget = max_iter;
  while (!work.empty()) {
    Piece pc = std::move(work.front());
    work.pop_front();
    if (pc.a >= pc.b) throw SingularHitError("degenerate strip while following the orbit");
    // split at any interior breakpoint of the current row
    bool split = false;
    for (const Rat& m : marks[pc.row]) {
      if (pc.a < m && m < pc.b) {
        Piece lo = pc, hi = pc;
        lo.b = m;
        hi.a = m;
        work.push_front(std::move(hi));
        work.push_front(std::move(lo));
        split = true;
        break;
      }
    }
    if (split) continue;
    if (budget-- <= 0) throw BudgetExceededError("first-return budget exhausted");
    // the strip sits inside one subinterval; push it through one application
    Rat mid = (pc.a + pc.b) / 2;
    EvalResult r = eval(t, mid, pc.row);
    if (std::holds_alternative<EvalSingular>(r))
      throw SingularHitError("orbit midpoint hit a subdivision point");
    // recompute the affine action on the whole strip from the endpoints
    // behaviour: same-row pairs reverse, opposite-row pairs translate
    int pos = -1;
    {
      Rat left(0);
      for (int p = row_begin(gp, pc.row); p < row_end(gp, pc.row); ++p) {
        Rat right = left + t.length_of_position(p);
        if (mid > left && mid < right) {
          pos = p;
          break;
        }
        left = right;
      }
    }
    Rat pos_left = t.left_of_position(pos);
    int q = gp.twin(pos);
    Rat q_left = t.left_of_position(q);
    bool same_row = (q < gp.top_len()) == (pos < gp.top_len());
    Piece nx = pc;
    nx.steps = pc.steps + 1;
    if (same_row) {
      // current' = (q_right + pos_left) - current, so the affine tracking
      // flips: sign' = -sign, shift' = (q_right + pos_left) - shift
      Rat q_right = q_left + t.length_of_position(q);
      nx.a = q_right - (pc.b - pos_left);
      nx.b = q_right - (pc.a - pos_left);
      nx.sign = -pc.sign;
      nx.shift = q_right + pos_left - pc.shift;
      nx.row = 1 - pc.row;  // f flips after the same-component involution
    } else {
      nx.a = q_left + (pc.a - pos_left);
      nx.b = q_left + (pc.b - pos_left);
      nx.sign = pc.sign;
      nx.shift = pc.shift + (q_left - pos_left);
      nx.row = pc.row;  // T~ switched the component, f switches back
    }
    if (nx.row == row) {
      if (nx.sign != 1)
        throw InternalError("first-return derivative must be +1 on the chosen row");
      done.push_back(Done{nx.a - nx.shift, nx.b - nx.shift, nx.a});
    } else {
      work.push_back(std::move(nx));
    }
  }

  std::sort(done.begin(), done.end(), [](const Done& x, const Done& y) { return x.a < y.a; });
  // merge strips whose translation constants agree
  std::vector<Done> merged;
  for (const Done& d : done) {
    if (!merged.empty() && merged.back().b == d.a &&
        merged.back().image - merged.back().a == d.image - d.a) {
      merged.back().b = d.b;
    } else {
      merged.push_back(d);
    }
  }
  // the starts must tile (0, L)
  Rat cursor(0);
  for (const Done& d : merged) {
    if (d.a != cursor) throw InternalError("return intervals do not tile the row");
    cursor = d.b;
  }
  if (cursor != L) throw InternalError("return intervals do not tile the row");

  const int k = static_cast<int>(merged.size());
  std::vector<int> by_image(k);
  for (int i = 0; i < k; ++i) by_image[i] = i;
  std::sort(by_image.begin(), by_image.end(),
            [&](int i, int j) { return merged[i].image < merged[j].image; });
  std::vector<LetterId> word(2 * k);
  for (int i = 0; i < k; ++i) word[i] = static_cast<LetterId>(i);
  for (int j = 0; j < k; ++j) word[k + j] = static_cast<LetterId>(by_image[j]);
  ReturnMap rm{GenPerm({}, std::move(word), k), {}};
  rm.lengths.resize(k);
  for (int i = 0; i < k; ++i) rm.lengths[i] = merged[i].b - merged[i].a;
  return rm;
}

}  // namespace linvol
