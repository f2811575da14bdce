#include <algorithm>
#include <numeric>

#include "pgatt/extraction.hpp"
#include "pgatt/machine.hpp"

namespace pgatt {

Family initial_family(std::size_t k, const std::vector<std::string>& words) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  Family::Map m;
  m.emplace(Focus{1}, TapeSlot::operative(from_args(words)));
  for (std::size_t j = 2; j <= k; ++j) {
    m.emplace(Focus{static_cast<std::uint32_t>(j)}, TapeSlot::operative(TapeState()));
  }
  return Family(std::move(m));
}

std::string to_string(ComputesRecord::Status s) {
  switch (s) {
    case ComputesRecord::Status::Pass:
      return "Pass";
    case ComputesRecord::Status::Fail:
      return "Fail";
    case ComputesRecord::Status::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

bool ComputesVerdict::passed() const {
  return std::all_of(records.begin(), records.end(), [](const ComputesRecord& r) {
    return r.status == ComputesRecord::Status::Pass;
  });
}

bool ComputesVerdict::inconclusive() const {
  const bool any_fail = std::any_of(records.begin(), records.end(), [](const ComputesRecord& r) {
    return r.status == ComputesRecord::Status::Fail;
  });
  const bool any_open = std::any_of(records.begin(), records.end(), [](const ComputesRecord& r) {
    return r.status == ComputesRecord::Status::Inconclusive;
  });
  return !any_fail && any_open;
}

namespace {

// Empty when the terminal family has the required shape; otherwise why not.
std::string shape_defect(const Family& u, std::size_t k) {
  if (u.size() != k) {
    return "final family has " + std::to_string(u.size()) + " tapes, expected " +
           std::to_string(k);
  }
  for (std::size_t j = 1; j <= k; ++j) {
    const TapeSlot* slot = u.find(Focus{static_cast<std::uint32_t>(j)});
    if (slot == nullptr) return "tt" + std::to_string(j) + " missing from final family";
    if (!slot->is_operative()) return "tt" + std::to_string(j) + " is inoperative";
  }
  return {};
}

}  // namespace

ComputesVerdict computes_check(const Term& t, const Oracle& oracle, std::size_t k,
                               const std::vector<std::vector<std::string>>& inputs,
                               const std::optional<TimeBound>& bound, std::uint64_t fuel) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  const RegularThread thread = extract(t);
  const Focus out_focus{static_cast<std::uint32_t>(k)};

  ComputesVerdict verdict;
  for (const auto& args : inputs) {
    ComputesRecord rec;
    rec.args = args;
    rec.expected = oracle(args);
    const RunOutcome o = run(thread, initial_family(k, args), fuel);
    rec.run_status = o.status;
    rec.steps = o.steps;

    if (o.status == RunStatus::OutOfFuel) {
      rec.status = ComputesRecord::Status::Inconclusive;
      rec.reason = "no verdict within " + std::to_string(fuel) + " steps";
    } else if (!rec.expected) {
      if (o.status == RunStatus::Terminated) {
        rec.status = ComputesRecord::Status::Fail;
        rec.reason = "terminated although the function is undefined here";
        if (const TapeSlot* slot = o.final.find(out_focus); slot && slot->is_operative()) {
          rec.output = ctt(slot->state());
        }
      } else {
        rec.status = ComputesRecord::Status::Pass;
        rec.reason = "empty family (" + to_string(o.status) + ")";
      }
    } else if (o.status != RunStatus::Terminated) {
      rec.status = ComputesRecord::Status::Fail;
      rec.reason = "run ended " + to_string(o.status) + " instead of terminating";
      if (o.stuck_on) rec.reason += " on " + to_string(*o.stuck_on);
    } else {
      std::string defect = shape_defect(o.final, k);
      if (defect.empty()) {
        const TapeState& tape = o.final.find(out_focus)->state();
        rec.output = ctt(tape);
        if (tape.head() != 1) {
          defect = "output head at " + std::to_string(tape.head()) + ", expected 1";
        } else if (*rec.output != *rec.expected) {
          defect = "output '" + *rec.output + "', expected '" + *rec.expected + "'";
        }
      }
      if (defect.empty() && bound) {
        const std::uint64_t len = std::accumulate(
            args.begin(), args.end(), std::uint64_t{0},
            [](std::uint64_t acc, const std::string& w) { return acc + w.size(); });
        const std::uint64_t limit = (*bound)(len);
        rec.within_bound = o.steps <= limit;
        if (!*rec.within_bound) {
          defect = std::to_string(o.steps) + " steps exceed the bound " + std::to_string(limit);
        }
      }
      rec.status = defect.empty() ? ComputesRecord::Status::Pass : ComputesRecord::Status::Fail;
      rec.reason = defect;
    }
    verdict.records.push_back(std::move(rec));
  }
  return verdict;
}

std::string nzt(const std::vector<std::string>& words) {
  if (words.size() != 1) {
    throw std::invalid_argument("NZT takes exactly one argument, got " +
                                std::to_string(words.size()));
  }
  return words[0].find('1') == std::string::npos ? "0" : "1";
}

}  // namespace pgatt
