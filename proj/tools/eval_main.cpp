#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_util.hpp"
#include "irisattn/irisattn.hpp"

using namespace irisattn;

namespace {

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recognition metrics: accuracy, ROC/EER, OR-ensembles, accuracy by PMI"};
  app.require_subcommand(1);

  std::string scores_path, log_path, out_path, members_csv;
  std::vector<std::int64_t> bucket_edges;
  bool pool = false;

  auto* acc = app.add_subcommand("acc", "Per-split classification accuracy");
  acc->add_option("--scores", scores_path, "Score matrix file")->required()->check(CLI::ExistingFile);
  acc->add_option("--out", out_path, "Output file (default: stdout)");

  auto* roc = app.add_subcommand("roc", "ROC curve and equal error rate");
  roc->add_option("--scores", scores_path, "Score matrix file")->required()->check(CLI::ExistingFile);
  roc->add_option("--out", out_path, "Curve file (default: stdout)");
  roc->add_flag("--pool", pool, "Pool all splits into one curve instead of one curve per split");

  auto* ensemble = app.add_subcommand("ensemble", "OR-rule ensemble of machine and human verdicts");
  ensemble->add_option("--log", log_path, "Decision log (JSON lines)")->required()->check(CLI::ExistingFile);
  ensemble->add_option("--members", members_csv, "Comma-separated sources, e.g. machine,humanA,humanB or machine,human#1,human#2")
      ->required();
  ensemble->add_option("--out", out_path, "Output file (default: stdout)");

  auto* pmi = app.add_subcommand("pmi", "Accuracy per source bucketed by post-mortem interval");
  pmi->add_option("--log", log_path, "Decision log (JSON lines)")->required()->check(CLI::ExistingFile);
  pmi->add_option("--buckets", bucket_edges, "Bucket edges in days; default: one bucket per PMI in the data")
      ->delimiter(',');
  pmi->add_option("--members", members_csv, "Also report the OR-ensemble of these members");
  pmi->add_option("--out", out_path, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  return cli::run_guarded([&] {
    if (acc->parsed()) {
      const auto report = eval::classification_accuracy(eval::parse_score_matrix(cli::read_file(scores_path)));
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
      nlohmann::json splits = nlohmann::json::array();
      for (const auto& a : report.per_split) splits.push_back(opt_json(a));
      cli::emit(out_path, {{"per_split", splits}, {"mean", opt_json(report.mean)}});
      return;
    }
    if (roc->parsed()) {
      const auto m = eval::parse_score_matrix(cli::read_file(scores_path));
      nlohmann::json out;
      if (pool) {
        const auto curve = eval::roc_eer(eval::scores_to_comparisons(m));
        out = {{"mode", "pooled"}, {"curve", eval::to_json(curve)}};
        std::cerr << "pooled EER: " << curve.eer << '\n';
      } else {
        nlohmann::json curves = nlohmann::json::array();
        double sum = 0.0;
        const auto per_split = eval::roc_per_split(m);
        for (const auto& s : per_split) {
          curves.push_back({{"split", s.split}, {"curve", eval::to_json(s.curve)}});
          sum += s.curve.eer;
        }
        const double mean = sum / static_cast<double>(per_split.size());
        out = {{"mode", "per_split"}, {"mean_eer", mean}, {"splits", curves}};
        std::cerr << "mean per-split EER: " << mean << '\n';
      }
      cli::emit(out_path, out);
      return;
    }

    const auto records = eval::parse_decision_log(cli::read_file(log_path));
    if (ensemble->parsed()) {
      const auto members = eval::parse_members(members_csv);
      const auto verdicts = eval::ensemble_or(records, members);
      nlohmann::json pairs = nlohmann::json::array();
      for (const auto& v : verdicts) {
        nlohmann::json mv = nlohmann::json::array();
        for (auto x : v.member_verdicts) mv.push_back(eval::to_string(x));
        pairs.push_back({{"pair_id", v.pair_id}, {"verdict", eval::to_string(v.verdict)},
                         {"ground_truth", eval::to_string(v.ground_truth)}, {"members", mv}});
      }
      nlohmann::json member_acc = nlohmann::json::object();
      for (const auto& m : members) member_acc[m.name()] = opt_json(eval::member_accuracy(records, m));
      cli::emit(out_path, {{"pairs", pairs}, {"member_accuracy", member_acc}, {"ensemble_accuracy", opt_json(eval::ensemble_accuracy(verdicts))}});
      return;
    }

    auto all = records;
    if (!members_csv.empty()) {
      const auto ens = eval::as_records(eval::ensemble_or(records, eval::parse_members(members_csv)), "ensemble");
      all.insert(all.end(), ens.begin(), ens.end());
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : eval::accuracy_by_pmi(all, eval::make_buckets(bucket_edges, all))) {
      rows.push_back({{"source", row.source}, {"bucket", row.bucket.label()}, {"correct", row.correct},
                      {"total", row.total}, {"accuracy", row.accuracy()}});
    }
    cli::emit(out_path, {{"buckets", rows}});
  });
}
