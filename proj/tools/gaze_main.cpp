#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli_util.hpp"
#include "irisattn/irisattn.hpp"

using namespace irisattn;

namespace {

nlohmann::json fixation_json(const gaze::FixationEvent& f) {
  return {{"t_start", f.t_start}, {"t_end", f.t_end},           {"cx", f.cx}, {"cy", f.cy},
          {"dispersion", f.dispersion}, {"sample_count", f.sample_count}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaze log processing: fixations, clusters and human attention maps"};
  app.require_subcommand(1);

  std::string log_path, transform_path, out_path;
  gaze::FixationConfig fx_cfg;
  gaze::ClusterConfig cl_cfg;
  double sigma = gaze::kDefaultSigmaScreenPx;

  auto add_detection = [&](CLI::App* sub) {
    sub->add_option("--log", log_path, "Gaze log CSV (t_ms,x,y,valid)")->required()->check(CLI::ExistingFile);
    sub->add_option("--dispersion", fx_cfg.dispersion_px, "Dispersion threshold in screen px")->capture_default_str();
    sub->add_option("--min-dur", fx_cfg.min_duration_ms, "Minimum fixation duration in ms")->capture_default_str();
    sub->add_option("--out", out_path, "Output file (default: stdout)");
  };

  auto* fixations = app.add_subcommand("fixations", "Detect fixations (I-DT)");
  add_detection(fixations);

  auto* cluster = app.add_subcommand("cluster", "Cluster fixations into salient regions");
  add_detection(cluster);
  cluster->add_option("--transform", transform_path, "Screen-to-image transform descriptor")->required()->check(CLI::ExistingFile);
  cluster->add_option("--eps", cl_cfg.neighborhood_px, "Neighbourhood radius in image px")->capture_default_str();
  cluster->add_option("--min-members", cl_cfg.min_members, "Minimum neighbourhood size")->capture_default_str();
  cluster->add_option("--radius", cl_cfg.display_radius_px, "Reported circle radius in image px")->capture_default_str();

  auto* humanmap = app.add_subcommand("humanmap", "Build the normalized human attention map");
  add_detection(humanmap);
  humanmap->add_option("--transform", transform_path, "Screen-to-image transform descriptor")->required()->check(CLI::ExistingFile);
  humanmap->add_option("--sigma", sigma, "Gaussian sigma in screen px")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  return cli::run_guarded([&] {
    const auto samples = gaze::parse_gaze_log(cli::read_file(log_path));
    const auto events = gaze::detect_fixations(samples, fx_cfg);
    if (fixations->parsed()) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& f : events) arr.push_back(fixation_json(f));
      cli::emit(out_path, {{"fixations", arr}});
      return;
    }
    const auto transform = gaze::parse_transform(cli::read_file(transform_path));
    if (cluster->parsed()) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& c : gaze::cluster_fixations(events, transform, cl_cfg)) {
        arr.push_back({{"cx", c.cx}, {"cy", c.cy}, {"radius", c.radius}, {"member_count", c.member_count},
                       {"total_duration", c.total_duration}});
      }
      cli::emit(out_path, {{"clusters", arr}});
      return;
    }
    const auto grid = gaze::build_human_map(events, transform, sigma);
    if (out_path.empty()) {
      std::cout << saliency::dump_grid(grid) << '\n';
    } else {
      cli::write_file(out_path, saliency::dump_grid(grid) + '\n');
    }
  });
}
