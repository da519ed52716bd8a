#include "rsvp/service.hpp"

#include <sstream>

#include "httplib.h"
#include "rsvp/error.hpp"
#include "rsvp/json_io.hpp"

namespace rsvp {

namespace {

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream in(path.substr(0, path.find('?')));
  while (std::getline(in, current, '/'))
    if (!current.empty()) parts.push_back(current);
  return parts;
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession:
    case ErrorCode::UnknownView:
    case ErrorCode::NotFound: return 404;
    case ErrorCode::NotEditMode: return 409;
    case ErrorCode::RunLimitExceeded: return 413;
    default: return 400;
  }
}

HttpResponse error_response(int status, std::string_view code, const std::string& message) {
  return {status, dump(json{{"code", code}, {"message", message}})};
}

ViewId parse_view_id(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used == s.size()) return static_cast<ViewId>(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::UnknownView, s);
}

json emitted(const Session& s) {
  return emit_specs(s.doc, s.table, s.doc.filter_state);
}

CellSpec cell_from_request(const Session& s, const json& body) {
  if (body.contains("cell")) return body.at("cell").get<CellSpec>();
  if (!body.contains("option")) throw Error(ErrorCode::InvalidArgument, "view request needs a cell or an option");
  const auto option = parse_option(body.at("option").get<std::string>());
  const auto& info = option_info(option);
  if (info.category != Category::MDMV) return complex_cell(option, s.enc, s.table);
  if (option == OptionId::Hist) {
    const auto cells = histogram_cells(s.enc);
    const auto index = body.value("index", std::size_t{0});
    if (index >= cells.size()) throw Error(ErrorCode::OutOfRange, "histogram " + std::to_string(index));
    return cells[index];
  }
  auto layout = layout_smd(option, s.enc, s.table);
  return detail_for(layout, {body.value("row", std::size_t{0}), body.value("col", std::size_t{0})});
}

FilterState apply_delta(const Session& s, const json& body) {
  if (!body.is_object()) throw Error(ErrorCode::InvalidFilter, "filter delta must be an object");
  FilterState f = body.value("reset", false) ? FilterState{} : s.doc.filter_state;
  if (body.contains("ranges")) {
    if (!body.at("ranges").is_object()) throw Error(ErrorCode::InvalidFilter, "ranges must be an object");
    for (const auto& [dim, range] : body.at("ranges").items()) {
      if (range.is_null()) f.ranges.erase(dim);
      else f.ranges[dim] = range.get<Range>();
    }
  }
  if (body.contains("selected_run")) {
    const auto& sel = body.at("selected_run");
    if (sel.is_null()) f = clear_selection(std::move(f));
    else f = select_run(std::move(f), s.table, sel.get<RunId>());
  }
  validate(f, s.table);
  return f;
}

std::uint64_t mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Service::Service(ServiceConfig config, Clock clock) : config_(config), clock_(std::move(clock)) {}

std::size_t Service::session_count() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::string Service::next_id() {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(mix(config_.id_seed ^ mix(++counter_))));
  return buf;
}

void Service::expire_idle() {
  const auto now = clock_();
  std::lock_guard lock(mutex_);
  std::erase_if(sessions_, [&](const auto& entry) {
    std::unique_lock slot_lock(entry.second->mutex, std::try_to_lock);
    return slot_lock.owns_lock() && now - entry.second->session.last_access > config_.idle_timeout;
  });
}

std::shared_ptr<Service::Slot> Service::lookup(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, id);
  return it->second;
}

json Service::overview(const Session& s) {
  json out;
  out["encoding"] = s.enc;
  const auto applicable = applicable_options(s.enc, s.table);
  out["applicable"] = applicable;

  json layouts = json::array();
  json complex = json::array();
  for (const auto& a : applicable) {
    const auto& info = option_info(a.id);
    if (info.category == Category::MDMV) {
      if (!info.has_smd) continue;
      const auto layout = layout_smd(a.id, s.enc, s.table);
      json specs = json::array();
      for (const auto& row : layout.cells) {
        json spec_row = json::array();
        for (const auto& cell : row) spec_row.push_back(make_vis_spec(cell, s.doc.data_ref));
        specs.push_back(spec_row);
      }
      layouts.push_back({{"layout", layout}, {"specs", specs}});
    } else {
      const auto cell = complex_cell(a.id, s.enc, s.table);
      complex.push_back({{"cell", cell}, {"spec", make_vis_spec(cell, s.doc.data_ref)}});
    }
  }
  out["layouts"] = layouts;
  out["complex"] = complex;

  // The overview stays unfiltered; only the preselected runs are highlighted.
  const FilterState unfiltered;
  const auto all = apply_filters(s.table, unfiltered);
  json hists = json::array();
  for (const auto& cell : histogram_cells(s.enc))
    hists.push_back({{"cell", cell},
                     {"spec", make_vis_spec(cell, s.doc.data_ref)},
                     {"histogram", histogram(s.table, cell.axes.front(), all)}});
  out["histograms"] = hists;
  out["preselected"] = preselected_runs(all, unfiltered, ViewStyle{}.preselect_count);

  json data = json::object();
  for (auto f : {Field::S1, Field::S2, Field::Color, Field::Opacity})
    for (const auto& d : s.enc.field(f)) {
      const auto& col = s.table.quantitative(d);
      data[d] = std::vector<double>(col.data(), col.data() + col.size());
    }
  out["data"] = data;
  out["recommendations"] = s.tasks.empty() ? json(nullptr) : json(recommend(s.tasks, s.enc, s.table));
  return out;
}

json Service::create_session(const json& body) {
  if (!body.is_object() || !body.contains("csv") || !body.at("csv").is_string())
    throw Error(ErrorCode::InvalidArgument, "POST /session needs a \"csv\" string");
  IngestOptions ingest;
  ingest.max_runs = config_.max_runs;
  auto table = load_csv(body.at("csv").get<std::string>(), ingest);
  if (body.contains("sidecar") && !body.at("sidecar").is_null()) {
    const auto& sc = body.at("sidecar");
    table = apply_sidecar(table, sc.is_string() ? sc.get<std::string>() : sc.dump());
  }

  auto slot = std::make_shared<Slot>();
  slot->session.table = std::move(table);
  slot->session.last_access = clock_();
  std::lock_guard lock(mutex_);
  slot->session.id = next_id();
  sessions_[slot->session.id] = slot;
  return {{"session", slot->session.id}, {"summary", table_summary(slot->session.table)}};
}

json Service::route_session(Slot& slot, const std::string& method, const std::vector<std::string>& parts,
                            const json& body, int& status) {
  auto& s = slot.session;
  const auto n = parts.size();
  const std::string tail = n > 2 ? parts[2] : "";

  if (n == 2 && method == "DELETE") {
    std::lock_guard lock(mutex_);
    sessions_.erase(s.id);
    return {{"deleted", s.id}};
  }
  if (n == 3 && tail == "overview" && method == "GET") return overview(s);
  if (n == 3 && tail == "encoding" && method == "PUT") {
    auto enc = body.get<EncodingState>();
    validate(enc, s.table);
    s.enc = std::move(enc);
    return overview(s);
  }
  if (n == 3 && tail == "tasks" && method == "PUT") {
    const json& list = body.is_object() ? body.at("tasks") : body;
    if (!list.is_array()) throw Error(ErrorCode::InvalidArgument, "tasks must be a list");
    std::vector<Task> tasks;
    for (const auto& t : list) tasks.push_back(parse_task(t.get<std::string>()));
    auto normalized = normalize_tasks(tasks);
    auto recs = recommend(normalized, s.enc, s.table);
    s.tasks = std::move(normalized);
    return recs;
  }
  if (n == 3 && tail == "filters" && method == "PUT") {
    s.doc = set_filters(s.doc, apply_delta(s, body), s.table);
    return {{"result", apply_filters(s.table, s.doc.filter_state)},
            {"filter_state", s.doc.filter_state},
            {"views", emitted(s)}};
  }
  if (n == 3 && tail == "mode" && method == "PUT") {
    const auto mode = parse_mode(body.is_object() ? body.at("mode").get<std::string>() : body.get<std::string>());
    s.doc = set_mode(s.doc, mode);
    return s.doc;
  }
  if (n >= 4 && tail == "dashboard") {
    const auto& what = parts[3];
    if (n == 4 && what == "export" && method == "GET") return s.doc;
    if (n == 4 && what == "specs" && method == "GET") return emitted(s);
    if (what == "views") {
      if (n == 4 && method == "POST") {
        DashboardDoc doc;
        if (body.contains("external_spec")) doc = add_external_view(s.doc, body.at("external_spec"), s.table, s.enc);
        else doc = add_view(s.doc, cell_from_request(s, body), s.table, s.enc);
        const auto id = doc.views.back().view_id;
        if (body.contains("rect")) doc = move_resize(std::move(doc), id, body.at("rect").get<Rect>());
        s.doc = std::move(doc);
        status = 201;
        return {{"view_id", id}, {"dashboard", s.doc}};
      }
      if (n == 5) {
        const auto id = parse_view_id(parts[4]);
        if (method == "DELETE") {
          s.doc = edit_attributes(s.doc, id, json{{"remove", true}}, s.table);
          return s.doc;
        }
        if (method == "PATCH") {
          if (!body.is_object()) throw Error(ErrorCode::InvalidPatch, "patch must be an object");
          DashboardDoc doc = s.doc;
          json style = body;
          if (body.contains("rect")) {
            doc = move_resize(std::move(doc), id, body.at("rect").get<Rect>());
            style.erase("rect");
          }
          if (!style.empty()) doc = edit_attributes(std::move(doc), id, style, s.table);
          else if (!doc.find(id)) throw Error(ErrorCode::UnknownView, std::to_string(id));
          s.doc = std::move(doc);
          return s.doc;
        }
      }
    }
  }
  throw Error(ErrorCode::NotFound, method + " /" + [&] {
    std::string p;
    for (std::size_t i = 0; i < parts.size(); ++i) p += (i ? "/" : "") + parts[i];
    return p;
  }());
}

HttpResponse Service::handle(const HttpRequest& request) {
  try {
    expire_idle();
    json body;
    if (!request.body.empty()) {
      try {
        body = json::parse(request.body);
      } catch (const json::parse_error& e) {
        return error_response(400, "InvalidJson", e.what());
      }
    }
    const auto parts = split_path(request.path);
    if (parts.empty() || parts[0] != "session") throw Error(ErrorCode::NotFound, request.path);
    if (parts.size() == 1) {
      if (request.method != "POST") throw Error(ErrorCode::NotFound, request.method + " " + request.path);
      return {201, dump(create_session(body))};
    }
    auto slot = lookup(parts[1]);
    std::lock_guard lock(slot->mutex);
    slot->session.last_access = clock_();
    int status = 200;
    auto result = route_session(*slot, request.method, parts, body, status);
    return {status, dump(result)};
  } catch (const Error& e) {
    return error_response(status_for(e.code()), to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    return error_response(400, "InvalidArgument", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "Internal", e.what());
  }
}

int run_server(Service& service, const std::string& host, int port) {
  httplib::Server server;
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    const auto out = service.handle({req.method, req.path, req.body});
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  server.Get(".*", forward);
  server.Post(".*", forward);
  server.Put(".*", forward);
  server.Patch(".*", forward);
  server.Delete(".*", forward);
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, PUT, PATCH, DELETE, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  if (!server.listen(host, port)) return 3;
  return 0;
}

}  // namespace rsvp
