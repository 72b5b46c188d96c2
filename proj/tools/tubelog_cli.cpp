// tubelog: construct the folded-uniformizer ledger and comb atlas, verify
// the quantitative estimates, and render figures.
//
// exit codes: 0 all checks pass, 1 check failure, 2 construction frontier
// not reached, 3 usage error.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "tubelog/json_io.hpp"
#include "tubelog/svg.hpp"
#include "tubelog/verify.hpp"

namespace fs = std::filesystem;
using namespace tubelog;

namespace {

struct CliOptions {
  std::string config_path;
  int depth = -1;                // override
  std::string out_dir;           // override
  std::string check_filter;
};

RunConfig make_config(const CliOptions& opt) {
  RunConfig cfg =
      opt.config_path.empty() ? default_config() : load_config(opt.config_path);
  if (opt.depth >= 0) cfg.depth = opt.depth;
  if (!opt.out_dir.empty()) cfg.output_dir = opt.out_dir;
  validate_config(cfg);
  return cfg;
}

bool wants(const RunConfig& cfg, const std::string& kind) {
  for (const std::string& e : cfg.emit)
    if (e == kind) return true;
  return false;
}

int do_construct(const RunConfig& cfg, ConstructResult& res) {
  res = run_construct(cfg);
  fs::create_directories(cfg.output_dir);
  Json j;
  j["config"] = config_to_json(cfg);
  j["ledger"] = ledger_to_json(res.ledger);
  j["atlas"] = atlas_to_json(res.atlas);
  write_file(cfg.output_dir + "/ledger.json", j.dump(2) + "\n");
  if (wants(cfg, "csv"))
    write_file(cfg.output_dir + "/curves_depth" +
                   std::to_string(res.atlas.depth) + ".csv",
               curves_csv(res.atlas));
  std::cout << "stages chosen: " << res.ledger.stages.size()
            << ", certified depth: " << res.ledger.certified_depth() << "\n";
  if (!res.reached_depth) {
    std::cout << "frontier: " << res.ledger.frontier_predicate << " -- "
              << res.ledger.frontier_detail << "\n";
    return 2;
  }
  return 0;
}

int load_artifacts(const RunConfig& cfg, ConstructResult& res) {
  const std::string path = cfg.output_dir + "/ledger.json";
  if (!fs::exists(path)) {
    std::cerr << "missing " << path << " (run construct first)\n";
    return 3;
  }
  const Json j = Json::parse(read_file(path));
  res.ledger = ledger_from_json(j.at("ledger"));
  res.atlas = atlas_from_json(j.at("atlas"));
  res.reached_depth = res.ledger.certified_depth() >= cfg.depth;
  return 0;
}

int do_verify(const RunConfig& cfg, const ConstructResult& res,
              const std::string& filter) {
  VerificationReport rep = run_verify(cfg, res.ledger, res.atlas);
  fs::create_directories(cfg.output_dir);
  if (wants(cfg, "report"))
    write_file(cfg.output_dir + "/report.json",
               report_to_json(cfg, res.ledger, rep).dump(2) + "\n");
  bool filtered_fail = false;
  for (const CheckResult& c : rep.checks) {
    if (!filter.empty() && c.name.find(filter) == std::string::npos) continue;
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  worst="
              << c.worst << " tol=" << c.tolerance;
    if (!c.note.empty()) std::cout << "  (" << c.note << ")";
    std::cout << "\n";
    filtered_fail = filtered_fail || !c.pass;
  }
  if (filter.empty()) return rep.all_pass ? 0 : 1;
  return filtered_fail ? 1 : 0;
}

int do_render(const RunConfig& cfg, const ConstructResult& res) {
  fs::create_directories(cfg.output_dir);
  if (res.ledger.stages.empty()) {
    std::cerr << "nothing to render: no stages\n";
    return 2;
  }
  write_file(cfg.output_dir + "/fig_foliation.svg", fig_foliation(res.ledger));
  write_file(cfg.output_dir + "/fig_domains.svg",
             fig_domains(res.ledger, cfg.depth));
  write_file(cfg.output_dir + "/fig_comb.svg", fig_comb(res.atlas));
  if (wants(cfg, "disk-svg"))
    write_file(cfg.output_dir + "/fig_disk.svg",
               fig_disk(res.ledger, res.atlas, cfg.depth));
  std::cout << "figures written to " << cfg.output_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tube-log uniformizer construction and verification"};
  app.require_subcommand(1);

  CliOptions opt;
  app.add_option("--config", opt.config_path, "JSON config file");
  app.add_option("--depth", opt.depth, "override construction depth");
  app.add_option("--out", opt.out_dir, "override output directory");

  CLI::App* c_construct =
      app.add_subcommand("construct", "run the inductive parameter choice");
  CLI::App* c_verify = app.add_subcommand("verify", "run the check battery");
  c_verify->add_option("--check", opt.check_filter,
                       "only report checks whose name contains this string");
  CLI::App* c_render = app.add_subcommand("render", "emit SVG figures");
  CLI::App* c_all = app.add_subcommand("all", "construct, verify and render");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    const RunConfig cfg = make_config(opt);
    ConstructResult res;
    if (c_construct->parsed()) return do_construct(cfg, res);
    if (c_verify->parsed()) {
      const int rc = load_artifacts(cfg, res);
      if (rc) return rc;
      return do_verify(cfg, res, opt.check_filter);
    }
    if (c_render->parsed()) {
      const int rc = load_artifacts(cfg, res);
      if (rc) return rc;
      return do_render(cfg, res);
    }
    if (c_all->parsed()) {
      const int rc_c = do_construct(cfg, res);
      const int rc_v = do_verify(cfg, res, "");
      const int rc_r = do_render(cfg, res);
      if (rc_c == 2) return 2;
      if (rc_v) return rc_v;
      return rc_r;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
