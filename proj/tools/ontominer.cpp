#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ontominer/ontominer.hpp"

namespace fs = std::filesystem;
using namespace ontominer;

namespace {

struct RunConfig {
  std::string kb_path;
  std::string reference_concept;
  std::string minsup = "1";
  int max_depth = 3;
  std::string mode = "sem";
  std::vector<std::string> bias;
  std::string out_dir = ".";
  bool covering_complement = false;
  bool cp_keep_nondl = false;
  std::string equiv_scan = "all";
  int skolem_depth = 3;
  std::size_t max_branches = 100000;
  std::string dump_program;
  std::string dump_models;
  bool with_tax = false;
};

Mode parse_mode(const std::string& s) {
  if (s == "sem") return Mode::Sem;
  if (s == "nosem") return Mode::NoSem;
  return Mode::SemTax;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

CombinedKB load(const RunConfig& rc) {
  std::ifstream in(rc.kb_path, std::ios::binary);
  if (!in) throw Error("cannot read " + rc.kb_path);
  ParseOptions po;
  po.covering_complement = rc.covering_complement;
  return parse_kb(in, po);
}

MiningConfig mining_config(const RunConfig& rc, Mode mode) {
  MiningConfig mc;
  mc.reference_concept = rc.reference_concept;
  try {
    mc.minsup = Rational::parse(rc.minsup);
  } catch (const std::invalid_argument& e) {
    throw Error(e.what());
  }
  mc.max_depth = rc.max_depth;
  mc.mode = mode;
  mc.bias = rc.bias;
  mc.chase.skolem_depth_cap = rc.skolem_depth;
  mc.chase.max_branches = rc.max_branches;
  mc.cp_keep_nondl = rc.cp_keep_nondl;
  mc.equiv_scan = rc.equiv_scan == "same-depth" ? EquivScan::SameDepth : EquivScan::All;
  return mc;
}

Miner run_one(const CombinedKB& kb, const RunConfig& rc, Mode mode, bool dumps) {
  auto program = clausify(kb);
  if (dumps && !rc.dump_program.empty()) write_file(rc.dump_program, dump_program(program));
  Miner miner(std::move(program), mining_config(rc, mode));
  if (dumps && !rc.dump_models.empty())
    write_file(rc.dump_models, models_to_string(miner.models(), miner.program().signature));
  miner.run();
  if (miner.stats().truncated)
    std::cerr << "warning: skolem depth cap reached; results may be incomplete\n";
  return miner;
}

int mine_command(const RunConfig& rc) {
  auto kb = load(rc);
  auto miner = run_one(kb, rc, parse_mode(rc.mode), true);
  fs::path out(rc.out_dir);
  fs::create_directories(out);
  write_file(out / "patterns.txt", patterns_text(miner));
  write_file(out / "stats.csv", stats_csv(miner.stats()));
  write_file(out / "trie.graphml", trie_graphml(miner));
  std::ostringstream timing;
  timing << "runtime_seconds," << miner.stats().runtime_seconds << "\n";
  write_file(out / "timing.csv", timing.str());
  std::cerr << miner.trie().nodes.size() << " frequent patterns, " << miner.stats().runtime_seconds << " s\n";
  return 0;
}

int compare_command(const RunConfig& rc) {
  auto kb = load(rc);
  std::vector<ModeRun> runs;
  std::vector<Mode> modes{Mode::Sem, Mode::NoSem};
  if (rc.with_tax) modes.push_back(Mode::SemTax);
  std::ostringstream timing;
  for (Mode m : modes) {
    auto miner = run_one(kb, rc, m, m == Mode::Sem);
    runs.push_back({m, miner.stats()});
    timing << to_string(m) << "," << miner.stats().runtime_seconds << "\n";
  }
  fs::path out(rc.out_dir);
  fs::create_directories(out);
  write_file(out / "compare.csv", compare_csv(runs));
  write_file(out / "timing.csv", "mode,runtime_seconds\n" + timing.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequent conjunctive pattern mining over combined knowledge bases"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "key=value configuration file");
  RunConfig rc;
  app.add_option("--kb", rc.kb_path, "knowledge base file")->required();
  app.add_option("--ref-concept", rc.reference_concept, "reference concept")->required();
  app.add_option("--minsup", rc.minsup, "minimum support in (0,1], decimal or fraction");
  app.add_option("--max-depth", rc.max_depth, "maximum pattern length including the reference atom")
      ->check(CLI::PositiveNumber);
  app.add_option("--mode", rc.mode, "sem, nosem or sem-tax")->check(CLI::IsMember({"sem", "nosem", "sem-tax"}));
  app.add_option("--bias", rc.bias, "comma-separated predicate list")->delimiter(',');
  app.add_option("--out", rc.out_dir, "output directory");
  app.add_flag("--covering-complement", rc.covering_complement, "read (equivalent A (not B)) as covering too");
  app.add_flag("--cp-keep-nondl", rc.cp_keep_nondl, "keep non-DL facts in semantic tests");
  app.add_option("--equiv-scan", rc.equiv_scan, "all or same-depth")->check(CLI::IsMember({"all", "same-depth"}));
  app.add_option("--skolem-depth", rc.skolem_depth, "nesting cap for skolem witnesses")->check(CLI::NonNegativeNumber);
  app.add_option("--max-branches", rc.max_branches, "cap on live chase branches")->check(CLI::PositiveNumber);
  app.add_option("--dump-program", rc.dump_program, "write the clausified program");
  app.add_option("--dump-models", rc.dump_models, "write the minimal models of the knowledge base");
  auto* mine = app.add_subcommand("mine", "mine frequent patterns")->fallthrough();
  auto* compare = app.add_subcommand("compare", "compare sem and nosem modes")->fallthrough();
  compare->add_flag("--with-tax", rc.with_tax, "also run sem-tax");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mine->parsed()) return mine_command(rc);
    if (compare->parsed()) return compare_command(rc);
  } catch (const InconsistentKB& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const EmptyReferenceConcept& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const BranchLimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
