#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_util.hpp"
#include "irisattn/irisattn.hpp"

using namespace irisattn;

int main(int argc, char** argv) {
  CLI::App app{"Human vs machine attention overlap"};
  app.require_subcommand(1);

  std::vector<std::string> cam_paths, human_paths;
  std::string out_path, pair_id;

  auto* q = app.add_subcommand("q", "Overlap score q per image; give two --cam/--human for a left/right pair");
  q->add_option("--cam", cam_paths, "Machine saliency grid(s)")->required()->expected(1, 2)->check(CLI::ExistingFile);
  q->add_option("--human", human_paths, "Human attention grid(s)")->required()->expected(1, 2)->check(CLI::ExistingFile);
  q->add_option("--pair-id", pair_id, "Pair identifier written to the report");
  q->add_option("--out", out_path, "Report file (default: stdout)");

  auto* agreement = app.add_subcommand("agreement", "Per-pixel agreement map sqrt(p_c * p_e)");
  agreement->add_option("--cam", cam_paths, "Machine saliency grid")->required()->expected(1)->check(CLI::ExistingFile);
  agreement->add_option("--human", human_paths, "Human attention grid")->required()->expected(1)->check(CLI::ExistingFile);
  agreement->add_option("--out", out_path, "Output grid file")->required();

  CLI11_PARSE(app, argc, argv);

  return cli::run_guarded([&] {
    if (cam_paths.size() != human_paths.size()) throw std::runtime_error("--cam and --human counts differ");
    std::vector<saliency::OverlapReport> reports;
    for (std::size_t i = 0; i < cam_paths.size(); ++i) {
      reports.push_back(saliency::compare_maps(saliency::load_saliency_grid(cli::read_file(cam_paths[i])),
                                               saliency::load_saliency_grid(cli::read_file(human_paths[i])), pair_id));
    }
    if (agreement->parsed()) {
      cli::write_file(out_path, saliency::dump_grid(reports.front().agreement) + '\n');
      return;
    }
    nlohmann::json report = {{"pair_id", pair_id}};
    if (reports.size() == 1) {
      report["q"] = reports[0].q;
    } else {
      const saliency::PairOverlap pair{pair_id, reports[0].q, reports[1].q};
      report["left"] = *pair.left;
      report["right"] = *pair.right;
      report["mean"] = *pair.mean();
    }
    cli::emit(out_path, report);
  });
}
