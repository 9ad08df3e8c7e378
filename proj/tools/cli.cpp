#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "logcap/forge.hpp"
#include "logcap/hash.hpp"
#include "logcap/instance_io.hpp"
#include "logcap/oracle.hpp"
#include "logcap/report.hpp"
#include "logcap/verifier.hpp"

namespace logcap::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "2,2" -> {2, 2}; "0" or "1" -> {} (trivial).
std::vector<std::uint64_t> parse_orders(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) throw InputError("bad order list '" + s + "'");
    out.push_back(v);
  }
  if (out.size() == 1 && out[0] <= 1) out.clear();
  return out;
}

/// Files named on the command line. A directory expands to its manifest's
/// file list when it has one, else to its sorted *.json files and
/// subdirectories.
std::vector<std::pair<std::string, fs::path>> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::pair<std::string, fs::path>> out;
  auto from_manifest = [&](const fs::path& m) {
    std::ifstream in(m);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw InstanceFormatError(m.string(), e.what());
    }
    if (!j.contains("files")) throw InstanceFormatError(m.string() + ":/files", "manifest without file list");
    for (const auto& f : j["files"]) {
      const std::string rel = f.at("path").get<std::string>();
      const fs::path file = m.parent_path() / rel;
      if (f.contains("sha256")) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw InputError("manifest lists missing file " + file.generic_string());
        const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (sha256_hex(text) != f["sha256"].get<std::string>())
          throw InstanceFormatError(file.generic_string(), "content hash differs from the manifest");
      }
      out.emplace_back(file.generic_string(), file);
    }
  };
  std::function<void(const fs::path&)> from_dir = [&](const fs::path& p) {
    if (fs::exists(p / "manifest.json")) {
      from_manifest(p / "manifest.json");
      return;
    }
    std::vector<fs::path> entries;
    for (const auto& e : fs::directory_iterator(p))
      if (e.is_directory() || (e.is_regular_file() && e.path().extension() == ".json")) entries.push_back(e.path());
    std::sort(entries.begin(), entries.end());
    for (const auto& e : entries) {
      if (fs::is_directory(e))
        from_dir(e);
      else
        out.emplace_back(e.generic_string(), e);
    }
  };
  for (const auto& arg : inputs) {
    const fs::path p(arg);
    if (fs::is_directory(p)) {
      from_dir(p);
    } else if (p.filename() == "manifest.json") {
      from_manifest(p);
    } else {
      if (!fs::exists(p)) throw InputError("no such file: " + arg);
      out.emplace_back(p.generic_string(), p);
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(output);
  if (!f) throw InputError("cannot write " + output);
  f << text;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const Instance inst = load_instance(path);
  const ValidationReport rep = validate(inst);
  json j = validation_json(rep);
  j["instance"] = path;
  out << j.dump(2) << "\n";
  return rep.ok() ? kOk : kMathFailure;
}

int cmd_verify(const std::vector<std::string>& inputs, const std::string& format, const std::string& output,
               int workers, std::uint64_t oracle_bound, std::ostream& out) {
  const auto files = expand_inputs(inputs);
  if (files.empty()) throw InputError("no instances given");
  std::vector<Instance> insts;
  for (const auto& [label, path] : files) insts.push_back(load_instance(path));
  VerifyOptions opts;
  opts.oracle_bound = oracle_bound;
  std::vector<std::optional<InstanceReport>> slots(insts.size());
  const long n = static_cast<long>(insts.size());
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) slots[i] = verify_instance(insts[i], opts, files[i].first);
  std::vector<InstanceReport> reports;
  for (auto& s : slots) reports.push_back(std::move(*s));
  const json agg = aggregate_json(reports);
  emit(format == "markdown" ? aggregate_markdown(agg) : agg.dump(2) + "\n", output, out);
  const bool all_ok = std::all_of(reports.begin(), reports.end(), [](const InstanceReport& r) { return r.ok(); });
  return all_ok ? kOk : kMathFailure;
}

int cmd_search(SearchParams p, const std::string& out_dir, std::ostream& out) {
  const CorpusSummary s = write_corpus(p, out_dir);
  out << "instances found: " << s.manifest["total_found"].get<std::uint64_t>()
      << ", written: " << s.files.size() << " to " << out_dir << "\n";
  return kOk;
}

int cmd_oracle(const std::string& path, std::uint64_t bound, std::ostream& out) {
  const Instance inst = load_instance(path);
  const OracleFacts f = oracle_group(inst, bound, Exec::parallel);
  const json j = {{"instance", path},
                  {"U_order", f.u_order},
                  {"derived_order", f.derived_size},
                  {"derived_degree_zero_order", f.derived_degree_zero_size},
                  {"omega_part_order", f.omega_part_size},
                  {"abelianization_order", f.abelianization_order},
                  {"degree_zero_quotient", f.degree_zero_quotient},
                  {"genus_quotient", f.genus_quotient},
                  {"ambiguous_order", f.ambiguous_order},
                  {"capitulation_kernel_order", f.capitulation_kernel_order},
                  {"ambiguous_in_kernel", f.ambiguous_in_kernel}};
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_report(const std::string& path, const std::string& format, const std::string& output, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  json agg;
  try {
    agg = json::parse(in);
    if (!agg.contains("instances") || !agg.contains("summary"))
      throw InstanceFormatError(path, "not a verification report");
    emit(format == "markdown" ? aggregate_markdown(agg) : agg["summary"].dump(2) + "\n", output, out);
  } catch (const json::exception& e) {
    throw InstanceFormatError(path, e.what());
  }
  const bool all_ok = agg["summary"]["not_ok"].get<std::size_t>() == 0;
  return all_ok ? kOk : kMathFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transfer/trace capitulation verifier for finite extension models"};
  app.require_subcommand(1);

  std::string path, format = "json", output;
  std::vector<std::string> inputs;
  int workers = 1;
  std::uint64_t oracle_bound = kDefaultOracleBound;

  auto* v = app.add_subcommand("validate", "Check the structural invariants and hypotheses of one instance");
  v->add_option("path", path, "instance JSON")->required();

  auto* ver = app.add_subcommand("verify", "Run checks V1..V10 on instances, directories or manifests");
  ver->add_option("inputs", inputs, "instance files, directories or manifest.json")->required();
  ver->add_option("--format", format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));
  ver->add_option("--output,-o", output, "write the report here instead of stdout");
  ver->add_option("--workers,-j", workers, "instances verified concurrently")->check(CLI::PositiveNumber);
  ver->add_option("--oracle-bound", oracle_bound, "largest |U| handed to the brute-force oracle");

  SearchParams sp;
  std::vector<std::string> g_lists, a_lists;
  std::string out_dir = "corpus";
  auto* se = app.add_subcommand("search", "Enumerate instances into a corpus directory with a manifest");
  se->add_option("--prime", sp.prime, "the prime l")->required();
  se->add_option("--G", g_lists, "cyclic factor orders of G, e.g. 2 or 2,2 (repeatable)")->required();
  se->add_option("--Atilde", a_lists, "invariant factors of Atilde, 0 for trivial (repeatable)")->required();
  se->add_option("--precision", sp.precision, "n, coefficients in Z/l^n");
  se->add_option("--out", out_dir, "corpus directory");
  se->add_option("--seed", sp.seed, "recorded in the manifest");
  se->add_option("--ceiling", sp.ceiling, "refuse when the search-space estimate exceeds this");
  se->add_option("--cap", sp.per_cell_cap, "cap on instances written per cell (0 = all)");
  se->add_option("--oracle-bound", sp.oracle_bound, "recorded in the manifest");

  auto* orc = app.add_subcommand("oracle", "Brute-force group facts of one instance");
  orc->add_option("path", path, "instance JSON")->required();
  orc->add_option("--oracle-bound", oracle_bound, "largest |U| to materialize");

  auto* rep = app.add_subcommand("report", "Render a JSON verification report");
  rep->add_option("path", path, "report written by verify --format json")->required();
  rep->add_option("--format", format, "markdown or json (summary only)")->check(CLI::IsMember({"json", "markdown"}));
  rep->add_option("--output,-o", output, "write here instead of stdout");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*v) return cmd_validate(path, out);
    if (*ver) return cmd_verify(inputs, format, output, workers, oracle_bound, out);
    if (*se) {
      if (!is_prime(sp.prime)) throw InputError("--prime must be prime");
      if (sp.precision == 0) throw InputError("--precision must be positive");
      for (const auto& g : g_lists) sp.group_orders.push_back(parse_orders(g));
      for (const auto& a : a_lists) sp.atilde_orders.push_back(parse_orders(a));
      return cmd_search(sp, out_dir, out);
    }
    if (*orc) return cmd_oracle(path, oracle_bound, out);
    if (*rep) return cmd_report(path, format, output, out);
  } catch (const CeilingExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const OracleUnavailable& e) {
    err << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const InstanceFormatError& e) {
    err << "input error at " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kMathFailure;
  }
  return kInputError;
}

}  // namespace logcap::cli
