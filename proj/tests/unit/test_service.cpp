#include "rsvp/fixtures.hpp"
#include "rsvp/json_io.hpp"
#include "rsvp/service.hpp"
#include "test_support.hpp"

using namespace rsvp;

namespace {

struct Client {
  Service& service;

  std::pair<int, json> call(const std::string& method, const std::string& path, const json& body = nullptr) {
    const auto res = service.handle({method, path, body.is_null() ? "" : body.dump()});
    return {res.status, json::parse(res.body)};
  }
};

std::string open_edge(Client& c) {
  const auto fx = make_fixture({FixtureKind::Edge, 60, 5});
  const auto [status, body] = c.call("POST", "/session", {{"csv", fx.csv}, {"sidecar", fx.sidecar}});
  REQUIRE(status == 201);
  return body.at("session").get<std::string>();
}

}  // namespace

TEST_CASE("session creation summarizes the edge fixture") {
  Service s;
  Client c{s};
  const auto fx = make_fixture({FixtureKind::Edge, 60, 5});
  const auto [status, body] = c.call("POST", "/session", {{"csv", fx.csv}, {"sidecar", fx.sidecar}});
  CHECK(status == 201);
  const auto& summary = body.at("summary");
  CHECK(summary.at("counts").at("Quantitative") == 7);
  CHECK(summary.at("run_count") == 60);
  CHECK(s.session_count() == 1);

  CHECK(c.call("POST", "/session", {{"csv", "a,a\n1,2\n"}}).first == 400);
  CHECK(c.call("POST", "/session", {{"nope", 1}}).first == 400);
  CHECK(c.call("GET", "/session/deadbeef/overview").first == 404);
  CHECK(c.call("GET", "/elsewhere").first == 404);
  const auto bad = s.handle({"POST", "/session", "{not json"});
  CHECK(bad.status == 400);
  CHECK(json::parse(bad.body).at("code") == "InvalidJson");
}

TEST_CASE("encoding, overview and tasks") {
  Service s;
  Client c{s};
  const auto id = open_edge(c);
  const std::string base = "/session/" + id;

  json enc = {{"s1", {"low", "high", "sigma"}}, {"s2", {"sep", "wep"}}, {"color", {"chi2_co"}},
              {"opacity", json::array()}, {"object", {"dtco", "co"}}};
  auto [status, overview] = c.call("PUT", base + "/encoding", enc);
  REQUIRE(status == 200);
  CHECK(overview.at("applicable").size() == 13);
  CHECK(overview.at("layouts").size() == 6);  // every MDMV option except Hist
  CHECK(overview.at("histograms").size() == 5);
  CHECK(overview.at("complex").size() == 6);
  for (const auto& l : overview.at("layouts")) {
    CHECK(l.at("specs").size() == l.at("layout").at("rows").size());
  }
  CHECK(c.call("GET", base + "/overview").second == overview);

  CHECK(c.call("PUT", base + "/encoding", {{"s1", {"dtco"}}}).first == 400);

  auto [tstatus, recs] = c.call("PUT", base + "/tasks", {{"tasks", {"Fitting"}}});
  REQUIRE(tstatus == 200);
  CHECK(recs.at("tasks") == json{"Optimization", "Fitting"});
  CHECK(c.call("PUT", base + "/tasks", json{"fitting", "uncertainty", "outliers", "sensitivity"}).first == 400);
  CHECK(c.call("GET", base + "/overview").second.at("recommendations").at("tasks").size() == 2);
}

TEST_CASE("dashboard views and filters") {
  Service s;
  Client c{s};
  const auto id = open_edge(c);
  const std::string base = "/session/" + id;
  c.call("PUT", base + "/encoding",
         {{"s1", {"low", "high", "sigma"}}, {"s2", {"sep"}}, {"object", {"co"}}});

  auto [st1, v1] = c.call("POST", base + "/dashboard/views", {{"option", "PC"}, {"row", 0}, {"col", 2}});
  REQUIRE(st1 == 201);
  CHECK(v1.at("dashboard").at("views")[0].at("cell").at("axes").size() == 4);
  auto [st2, v2] = c.call("POST", base + "/dashboard/views", {{"option", "Grid2D"}, {"rect", {{"x", 4}, {"y", 0}, {"w", 3}, {"h", 3}}}});
  REQUIRE(st2 == 201);
  const auto grid_id = v2.at("view_id").get<int>();
  CHECK(c.call("POST", base + "/dashboard/views", {{"option", "PC"}, {"row", 5}, {"col", 0}}).first == 400);

  CHECK(c.call("PATCH", base + "/dashboard/views/" + std::to_string(grid_id), {{"hide_filtered", true}}).first == 200);
  CHECK(c.call("PATCH", base + "/dashboard/views/99", {{"hide_filtered", true}}).first == 404);

  // Full-range filters keep every run.
  json ranges = json::object();
  for (const auto& d : {"low", "high", "sigma", "sep"}) ranges[d] = {-1e9, 1e9};
  auto [fs, full] = c.call("PUT", base + "/filters", {{"ranges", ranges}});
  REQUIRE(fs == 200);
  CHECK(full.at("result").at("pass_count") == full.at("result").at("run_count"));
  CHECK(full.at("views").size() == 2);

  auto [ns, narrow] = c.call("PUT", base + "/filters", {{"ranges", {{"low", {0.0, 0.1}}}}, {"selected_run", 3}});
  REQUIRE(ns == 200);
  const auto passing = narrow.at("result").at("pass_count").get<int>();
  CHECK(passing < 60);
  CHECK(narrow.at("views")[1].at("payload").at("images").size() == passing);
  CHECK(narrow.at("filter_state").at("selected_run") == 3);

  auto [rs, reset] = c.call("PUT", base + "/filters", {{"reset", true}});
  CHECK(reset.at("result").at("pass_count") == 60);
  CHECK(c.call("PUT", base + "/filters", {{"ranges", {{"co", {0, 1}}}}}).first == 400);

  CHECK(c.call("PUT", base + "/mode", {{"mode", "analyze"}}).first == 200);
  CHECK(c.call("PATCH", base + "/dashboard/views/1", {{"rect", {{"x", 1}, {"y", 1}, {"w", 1}, {"h", 1}}}}).first == 409);
  CHECK(c.call("DELETE", base + "/dashboard/views/1").first == 409);
  CHECK(c.call("PUT", base + "/filters", {{"selected_run", nullptr}}).first == 200);
  c.call("PUT", base + "/mode", {{"mode", "edit"}});
  const auto [ds, deleted] = c.call("DELETE", base + "/dashboard/views/1");
  CHECK_MESSAGE(ds == 200, deleted.dump());

  auto [es, exported] = c.call("GET", base + "/dashboard/export");
  REQUIRE(es == 200);
  CHECK(exported.at("views").size() == 1);
  CHECK(exported.get<DashboardDoc>().views[0].style.hide_filtered);

  CHECK(c.call("DELETE", base).first == 200);
  CHECK(c.call("GET", base + "/overview").first == 404);
}

TEST_CASE("identical request sequences give identical bytes") {
  auto script = [] {
    Service s;
    std::string transcript;
    const auto fx = make_fixture({FixtureKind::PowderLike, 50, 2});
    auto r = s.handle({"POST", "/session", json{{"csv", fx.csv}, {"sidecar", fx.sidecar}}.dump()});
    transcript += r.body;
    const auto base = "/session/" + json::parse(r.body).at("session").get<std::string>();
    for (const auto& [m, p, b] : std::vector<std::tuple<std::string, std::string, json>>{
             {"PUT", "/encoding", {{"s1", {"zoff1", "zoff2", "angl1", "angl2"}}, {"s2", {"chi2"}}, {"object", {"pattern"}}}},
             {"PUT", "/tasks", {"Fitting", "Sensitivity"}},
             {"POST", "/dashboard/views", {{"option", "wDCP"}, {"row", 0}, {"col", 0}}},
             {"POST", "/dashboard/views", {{"option", "Box1D"}}},
             {"POST", "/dashboard/views", {{"option", "CHist1D"}}},
             {"PUT", "/filters", {{"ranges", {{"chi2", {0.0, 0.05}}}}}},
             {"GET", "/dashboard/export", nullptr}}) {
      transcript += s.handle({m, base + p, b.is_null() ? "" : b.dump()}).body;
    }
    return transcript;
  };
  CHECK(script() == script());
}

TEST_CASE("idle sessions expire") {
  auto now = std::chrono::steady_clock::time_point{};
  ServiceConfig cfg;
  cfg.idle_timeout = std::chrono::seconds(10);
  Service s(cfg, [&] { return now; });
  Client c{s};
  const auto id = open_edge(c);
  now += std::chrono::seconds(5);
  CHECK(c.call("GET", "/session/" + id + "/dashboard/export").first == 200);
  now += std::chrono::seconds(9);
  CHECK(c.call("GET", "/session/" + id + "/dashboard/export").first == 200);
  now += std::chrono::seconds(11);
  CHECK(c.call("GET", "/session/" + id + "/dashboard/export").first == 404);
  CHECK(s.session_count() == 0);
}

TEST_CASE("run limit applies to uploads") {
  ServiceConfig cfg;
  cfg.max_runs = 10;
  Service s(cfg);
  Client c{s};
  const auto [status, body] = c.call("POST", "/session", {{"csv", make_fixture({FixtureKind::Synthetic, 20, 1, 3}).csv}});
  CHECK(status == 413);
  CHECK(body.at("code") == "RunLimitExceeded");
}
