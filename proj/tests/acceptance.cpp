// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

#include "logcap/forge.hpp"
#include "logcap/instance_io.hpp"
#include "logcap/report.hpp"
#include "logcap/verifier.hpp"

using namespace logcap;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kRoot = LOGCAP_SOURCE_DIR;

struct Entry {
  std::string label;
  Instance inst;
};

std::vector<Entry> load_corpus() {
  std::vector<Entry> out;
  for (const char* sub : {"corpus/l2", "corpus/l3"}) {
    const fs::path dir = kRoot / sub;
    const json m = json::parse(std::ifstream(dir / "manifest.json"));
    for (const auto& f : m["files"]) {
      const std::string rel = f["path"].get<std::string>();
      out.push_back({std::string(sub) + "/" + rel, load_instance(dir / rel)});
    }
  }
  return out;
}

int failures = 0;

void criterion(int n, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what << std::endl;
  failures += !ok;
}

bool status_is(const InstanceReport& r, const std::string& id, Status s) { return r.find(id)->status == s; }

std::vector<Status> statuses(const InstanceReport& r) {
  std::vector<Status> out;
  for (const auto& v : r.verdicts) out.push_back(v.status);
  return out;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Entry> corpus = load_corpus();
  std::vector<std::optional<InstanceReport>> slots(corpus.size());
  const long n = static_cast<long>(corpus.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) slots[i] = verify_instance(corpus[i].inst, {}, corpus[i].label);
  std::vector<InstanceReport> reports;
  for (auto& s : slots) reports.push_back(std::move(*s));
  const double verify_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "corpus: " << corpus.size() << " instances verified in " << verify_seconds << " s" << std::endl;

  auto all = [&](auto pred) {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < reports.size(); ++i)
      if (!pred(corpus[i].inst, reports[i])) {
        if (bad++ < 3) std::cout << "  counterexample: " << reports[i].label << std::endl;
      }
    return bad == 0;
  };

  {
    std::size_t oracle_runs = 0;
    const bool ok = all([&](const Instance& inst, const InstanceReport& r) {
      if (u_order(inst) > kDefaultOracleBound) return true;
      ++oracle_runs;
      return status_is(r, "V10", Status::pass);
    });
    criterion(1, ok && oracle_runs == corpus.size() && verify_seconds < 300,
              "V10 agrees with the oracle on " + std::to_string(oracle_runs) + " instances with |U| <= 4096 in " +
                  std::to_string(static_cast<int>(verify_seconds)) + " s");
  }
  criterion(2, all([](const Instance&, const InstanceReport& r) {
              return status_is(r, "V1", Status::pass) && r.find("V1")->witness["mode"] == "exhaustive";
            }),
            "transfer = trace o log, checked on every element of U");
  criterion(3, all([](const Instance&, const InstanceReport& r) {
              return status_is(r, "V2", Status::pass) && status_is(r, "V4", Status::pass) &&
                     status_is(r, "V5", Status::pass);
            }),
            "V2, V4, V5 pass on the corpus");
  criterion(4, all([](const Instance& inst, const InstanceReport& r) {
              const auto& w = r.find("V3")->witness;
              return status_is(r, "V3", Status::pass) && w["kappa"] == 1 &&
                     w["augmentation"] == inst.modulus().reduce(static_cast<std::int64_t>(inst.group().size())) &&
                     status_is(r, "V6", Status::pass);
            }),
            "det M = Tr (kappa = 1, augmentation |G|) and V6 pass");
  {
    std::size_t boundary = 0;
    const bool ok = all([&](const Instance& inst, const InstanceReport& r) {
      if (inst.group().rank() == 2 && r.boundary_order.value_or(1) > 1) ++boundary;
      return status_is(r, "V7", Status::pass) && status_is(r, "V8", Status::pass);
    });
    criterion(5, ok && boundary > 0,
              "V7, V8 pass; " + std::to_string(boundary) + " instance(s) with s = 2 and nonzero boundary");
  }
  criterion(6, all([](const Instance& inst, const InstanceReport& r) {
              return status_is(r, "V9", Status::pass) && r.ambiguous_index == inst.group().size();
            }),
            "(w^{-1}(I_G*Btilde) : I_G*Btilde) = |G|");

  {
    const Instance e1 = load_instance(kRoot / "fixtures" / "e1.json");
    std::vector<std::string> runs;
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      const auto r = verify_instance(e1, {}, "e1");
      ok = ok && r.ok() && r.delta == "0" && r.trace_image_order == 1;
      for (const auto& v : r.verdicts) ok = ok && v.status == Status::pass;
      runs.push_back(report_json(r).dump(2));
    }
    ok = ok && runs[0] == runs[1] && runs[1] == runs[2];
    criterion(7, ok, "E1: delta = 0, trace image of order 1, all checks pass, report byte-stable over 3 runs");
  }
  {
    std::mt19937_64 rng(2024);
    std::size_t changed = 0, tried = 0;
    for (int k = 0; k < 50; ++k) {
      std::size_t idx = rng() % corpus.size();
      for (std::size_t step = 0; step < corpus.size() && corpus[idx].inst.atilde_rank() == 0; ++step)
        idx = (idx + 1) % corpus.size();
      const auto shift = random_admissible_shift(corpus[idx].inst, rng);
      const auto r = verify_instance(coboundary_shift(corpus[idx].inst, shift));
      ++tried;
      if (statuses(r) != statuses(reports[idx])) {
        ++changed;
        std::cout << "  verdict changed: " << corpus[idx].label << std::endl;
      }
    }
    criterion(8, changed == 0 && tried == 50, "50 random admissible coboundary shifts change no verdict");
  }
  {
    const auto bad = verify_instance(load_instance(kRoot / "fixtures" / "corrupted_cocycle.json"));
    bool ok = !bad.validation.find("cocycle-identity")->passed;
    for (const auto& v : bad.verdicts) ok = ok && v.status == Status::fail;
    const auto hyp = verify_instance(load_instance(kRoot / "fixtures" / "h1_violation.json"));
    for (int k = 1; k <= 9; ++k) ok = ok && status_is(hyp, "V" + std::to_string(k), Status::hypothesis_failed);
    std::ostringstream out, err;
    const int code = cli::run({"verify", (kRoot / "fixtures" / "h1_violation.json").string()}, out, err);
    ok = ok && code == cli::kMathFailure;
    criterion(9, ok, "corrupted cocycle fails cocycle-identity; H1 violation is hypothesis-failed on V1-V9, exit " +
                         std::to_string(code));
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "total runtime: " << total << " s" << std::endl;
  return failures == 0 ? 0 : 1;
}
