#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "irisattn/common/error.hpp"
#include "irisattn/experiment/artifact_store.hpp"
#include "irisattn/experiment/session_store.hpp"
#include "irisattn/saliency/compare.hpp"
#include "irisattn/saliency/grid_io.hpp"

namespace irisattn::experiment {

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kSequence:
    case ErrorCode::kCapacity: return 422;
    default: return 400;
  }
}

inline nlohmann::json report_json(const SessionReport& r) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"pair_id", p.pair_id},
                     {"verdict", eval::to_string(p.verdict)},
                     {"ground_truth", eval::to_string(p.ground_truth)},
                     {"correct", p.correct()},
                     {"elapsed_ms", p.elapsed_ms}});
  }
  nlohmann::json j = {{"session_id", r.session_id}, {"subject_id", r.subject_id}, {"scheduled", r.scheduled},
                      {"answered", r.answered},     {"pairs", std::move(pairs)}};
  j["accuracy"] = r.accuracy ? nlohmann::json(*r.accuracy) : nlohmann::json(nullptr);
  j["mean_elapsed_ms"] = r.mean_elapsed_ms ? nlohmann::json(*r.mean_elapsed_ms) : nlohmann::json(nullptr);
  return j;
}

/// Routes:
///   POST /sessions                      {subject_id, k?, seed?}
///   GET  /sessions/:id/next
///   POST /sessions/:id/decisions        {pair_id, verdict, elapsed_ms, trace?: {csv, geometry}}
///   GET  /sessions/:id/report           only once the session is complete
///   GET|PUT /pairs/:id/grids/:name      saliency grid files
///   GET|PUT /pairs/:id/gaze/:name       gaze log CSV
///   GET  /pairs/:id/images/:side        raw image bytes, left or right
///   GET  /pairs/:id/overlap             q per side from cam_<side> and human_<side> grids
///
/// No response carries ground truth for a session that is still running.
inline void register_routes(httplib::Server& server, SessionStore& sessions, const ArtifactStore& artifacts) {
  auto guarded = [](auto handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const Error& e) {
        res.status = http_status(e.code());
        res.set_content(nlohmann::json{{"error", to_string(e.code())}, {"message", e.what()}}.dump(), "application/json");
      } catch (const nlohmann::json::exception& e) {
        res.status = 400;
        res.set_content(nlohmann::json{{"error", "format"}, {"message", e.what()}}.dump(), "application/json");
      }
    };
  };
  auto send_json = [](httplib::Response& res, const nlohmann::json& j, int status = 200) {
    res.status = status;
    res.set_content(j.dump(), "application/json");
  };
  auto parse_body = [](const httplib::Request& req) {
    try {
      return nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kFormat, std::string("request body: ") + e.what());
    }
  };

  server.Post("/sessions", guarded([&, send_json, parse_body](const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_body(req);
    std::optional<std::size_t> k;
    std::optional<std::uint64_t> seed;
    if (body.contains("k")) k = body.at("k").get<std::size_t>();
    if (body.contains("seed")) seed = body.at("seed").get<std::uint64_t>();
    const auto st = sessions.create_session(body.at("subject_id").get<std::string>(), k, seed);
    send_json(res, {{"session_id", st.session_id}, {"subject_id", st.subject_id}, {"total", st.schedule.size()}}, 201);
  }));

  server.Get("/sessions/:id/next", guarded([&, send_json](const httplib::Request& req, httplib::Response& res) {
    const auto& id = req.path_params.at("id");
    const auto st = sessions.state(id);
    const auto pair = sessions.next_pair(id);
    if (!pair) {
      send_json(res, {{"complete", true}, {"total", st.schedule.size()}});
      return;
    }
    send_json(res, {{"complete", false}, {"index", st.cursor}, {"total", st.schedule.size()}, {"pair", public_view(*pair)}});
  }));

  server.Post("/sessions/:id/decisions",
              guarded([&, send_json, parse_body](const httplib::Request& req, httplib::Response& res) {
                const auto body = parse_body(req);
                const auto verdict = eval::parse_verdict(body.at("verdict").get<std::string>());
                if (!verdict) throw Error(ErrorCode::kDomain, "verdict must be genuine or impostor");
                std::optional<PointerTrace> trace;
                if (body.contains("trace") && !body["trace"].is_null()) {
                  const auto& t = body["trace"];
                  trace = PointerTrace{t.at("csv").get<std::string>(), t.value("geometry", nlohmann::json::object())};
                }
                const auto ack = sessions.record_decision(req.path_params.at("id"), body.at("pair_id").get<std::string>(),
                                                          *verdict, body.at("elapsed_ms").get<double>(), trace);
                send_json(res, {{"ok", true}, {"pair_id", ack.pair_id}, {"index", ack.index}, {"cursor", ack.cursor}});
              }));

  server.Get("/sessions/:id/report", guarded([&, send_json](const httplib::Request& req, httplib::Response& res) {
    const auto& id = req.path_params.at("id");
    if (!sessions.state(id).complete()) throw Error(ErrorCode::kConflict, "session " + id + " is still running");
    send_json(res, report_json(sessions.session_report(id)));
  }));

  auto artifact_routes = [&](const std::string& segment, ArtifactKind kind, const char* mime) {
    const std::string pattern = "/pairs/:id/" + segment + "/:name";
    server.Get(pattern, guarded([&artifacts, kind, mime](const httplib::Request& req, httplib::Response& res) {
      const auto body = artifacts.get(req.path_params.at("id"), kind, req.path_params.at("name"));
      if (!body) throw Error(ErrorCode::kNotFound, "artifact " + req.path_params.at("name"));
      res.set_content(*body, mime);
    }));
    server.Put(pattern, guarded([&artifacts, kind, send_json](const httplib::Request& req, httplib::Response& res) {
      artifacts.put(req.path_params.at("id"), kind, req.path_params.at("name"), req.body);
      send_json(res, {{"ok", true}});
    }));
  };
  artifact_routes("grids", ArtifactKind::kGrid, "application/json");
  artifact_routes("gaze", ArtifactKind::kGaze, "text/csv");

  server.Get("/pairs/:id/images/:side", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const auto pair = sessions.find_pair(req.path_params.at("id"));
    if (!pair) throw Error(ErrorCode::kNotFound, "pair " + req.path_params.at("id"));
    const auto& side = req.path_params.at("side");
    if (side != "left" && side != "right") throw Error(ErrorCode::kNotFound, "side " + side);
    const auto path = artifacts.resolve_image(side == "left" ? pair->left_image : pair->right_image);
    if (!path) throw Error(ErrorCode::kNotFound, "image for pair " + pair->pair_id);
    std::ifstream in(*path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    res.set_content(buf.str(), "application/octet-stream");
  }));

  server.Get("/pairs/:id/overlap", guarded([&, send_json](const httplib::Request& req, httplib::Response& res) {
    const auto& id = req.path_params.at("id");
    if (!sessions.find_pair(id)) throw Error(ErrorCode::kNotFound, "pair " + id);
    saliency::PairOverlap overlap{id, {}, {}};
    for (const char* side : {"left", "right"}) {
      const auto cam = artifacts.get(id, ArtifactKind::kGrid, std::string("cam_") + side);
      const auto human = artifacts.get(id, ArtifactKind::kGrid, std::string("human_") + side);
      if (!cam || !human) continue;
      const double q = saliency::compare_maps(saliency::load_saliency_grid(*cam), saliency::load_saliency_grid(*human), id).q;
      (std::string(side) == "left" ? overlap.left : overlap.right) = q;
    }
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    send_json(res, {{"pair_id", id}, {"left", opt(overlap.left)}, {"right", opt(overlap.right)}, {"mean", opt(overlap.mean())}});
  }));
}

}  // namespace irisattn::experiment
