#include <CLI11.hpp>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "sphdg/driver.hpp"

using namespace sphdg;

namespace {

void print_report(const RunReport& rep, std::ostream& os) {
  os << std::setprecision(12);
  os << "steps:        " << rep.steps << "\n";
  os << "t_final:      " << double(rep.t_final) << "\n";
  os << "wall [s]:     " << rep.wall_seconds << "\n";
  os << "E_int:        " << double(rep.final_energy.e_int) << "\n";
  os << "E_kin:        " << double(rep.final_energy.e_kin) << "\n";
  os << "E_grav:       " << double(rep.final_energy.e_grav) << "\n";
  os << "E_tot:        " << double(rep.final_energy.e_tot) << "\n";
  os << "dE_cum:       " << double(rep.de_cum) << "\n";
  os << "rho_c(final): " << double(rep.final_central_density) << "\n";
  if (rep.bounce_time >= 0)
    os << "rho_c peak:   " << double(rep.bounce_density) << " at t = "
       << double(rep.bounce_time) << "\n";
  if (rep.has_l1)
    os << "L1 errors:    " << double(rep.l1[0]) << "  " << double(rep.l1[1]) << "  "
       << double(rep.l1[2]) << "\n";
}

std::vector<int> parse_mesh_list(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Well-balanced, energy-conserving DG solver for self-gravitating "
               "spherically symmetric flows"};
  app.require_subcommand(1);

  std::string config_path, out_dir, mesh_spec = "25,50,100,200";
  int threads = 1, ref_cells = 640;

  CLI::App* cmd_run = app.add_subcommand("run", "run a configured scenario");
  cmd_run->add_option("config", config_path, "config file")->required();
  cmd_run->add_option("--out", out_dir, "output directory");
  cmd_run->add_option("--threads", threads, "assembly threads");

  CLI::App* cmd_sweep = app.add_subcommand("sweep", "convergence study over a mesh sequence");
  cmd_sweep->add_option("config", config_path, "config file")->required();
  cmd_sweep->add_option("--meshes", mesh_spec, "comma-separated cell counts");
  cmd_sweep->add_option("--ref", ref_cells, "reference resolution when no exact solution");
  cmd_sweep->add_option("--threads", threads, "assembly threads");

  CLI::App* cmd_ledger = app.add_subcommand("ledger", "run and print the energy ledger CSV");
  cmd_ledger->add_option("config", config_path, "config file")->required();
  cmd_ledger->add_option("--threads", threads, "assembly threads");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = parse_config_file(config_path);
    cfg.threads = threads;
    if (cmd_run->parsed()) {
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      const RunReport rep = run(cfg, &std::cerr);
      print_report(rep, std::cout);
    } else if (cmd_sweep->parsed()) {
      cfg.out_dir.clear();
      const SweepResult sweep = convergence_sweep(cfg, parse_mesh_list(mesh_spec), ref_cells,
                                                  &std::cerr);
      print_sweep(sweep, std::cout);
    } else {
      cfg.out_dir.clear();
      Run r(cfg);
      r.execute(nullptr);
      r.ledger().write_csv(std::cout);
    }
  } catch (const config_error& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const solver_error& err) {
    std::cerr << "solver abort: " << err.what() << "\n";
    return 3;
  }
  return 0;
}
