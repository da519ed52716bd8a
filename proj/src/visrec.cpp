#include "rsvp/visrec.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "json.hpp"
#include "rsvp/error.hpp"

namespace rsvp {

namespace detail {
extern const char* const kExplanationsJson;
}

namespace {

using enum OptionId;

constexpr std::array<TaskInfo, 6> kTasks = {{
    {Task::Optimization, "Optimization", "Overview", "Find the best parameter setting", StrategyBasis::Channel,
     "Spatial expressivity", std::nullopt},
    {Task::Fitting, "Fitting", "Affiliation", "Find where actual model data occurs", StrategyBasis::Channel,
     "Overview + Color", std::nullopt},
    {Task::Uncertainty, "Uncertainty", "Attenuation", "Determine the reliability of the output",
     StrategyBasis::Channel, "Overview + Brightness", std::nullopt},
    {Task::Outliers, "Outliers", "Separation", "Find odd or special outputs", StrategyBasis::Mark,
     "Point-based (0D-mark)", MarkClass::Point0D},
    {Task::Sensitivity, "Sensitivity", "Con-/Divergence",
     "Identify input regions with high or low impact on the output", StrategyBasis::Mark, "Line-based (1D-mark)",
     MarkClass::Line1D},
    {Task::Partitioning, "Partitioning", "Summarization", "Identify different types of model behavior",
     StrategyBasis::Mark, "Area-based (2D-mark)", MarkClass::Area2D},
}};

struct Row {
  std::vector<ExpressivityEntry> regular;
  std::vector<ExpressivityEntry> stochastic;
};

// Dimension-count buckets 1..6, 7-9, 10+.
const std::array<Row, 8>& expressivity_table() {
  static const std::array<Row, 8> table = {{
      {{{PSc, true}, {Hist, true}}, {{PSc, true}}},
      {{{wDCP, false}, {Hist, false}}, {{SP, false}}},
      {{{SPLOM, false}, {wDCP, false}, {Hist, false}}, {{SPLOM, false}}},
      {{{PC, false}, {wDCP, false}, {Hist, false}}, {{SPLOM, false}, {rSPLOM, false}}},
      {{{PC, false}, {wDCP, false}, {Hist, false}}, {{rSPLOM, false}}},
      {{{PC, false}, {Hist, false}}, {{rSPLOM, false}}},
      {{{PC, false}}, {{PC, false}}},
      {{{PC, true}}, {{PSc, false}}},
  }};
  return table;
}

std::size_t bucket_index(int dim_count) {
  if (dim_count <= 6) return static_cast<std::size_t>(dim_count - 1);
  if (dim_count <= 9) return 6;
  return 7;
}

bool is_input_role(Role r) {
  return r == Role::InputControl || r == Role::InputEnvironmental || r == Role::Unassigned;
}

class FrameSink {
 public:
  void option(Task task, OptionId id, std::optional<ColumnSource> source = std::nullopt, bool marginal = false,
              bool hide_filtered = false) {
    Frame f;
    f.kind = FrameKind::VisOption;
    f.option = id;
    f.task = task;
    f.source = source;
    f.marginal = marginal;
    f.hide_filtered = hide_filtered;
    push(std::move(f));
  }

  void channel(Task task, Field field, std::vector<Role> hints) {
    Frame f;
    f.kind = FrameKind::ChannelField;
    f.field = field;
    f.hint_roles = std::move(hints);
    f.task = task;
    push(std::move(f));
  }

  std::vector<Frame> take() { return std::move(frames_); }

 private:
  void push(Frame f) {
    if (std::find(frames_.begin(), frames_.end(), f) == frames_.end()) frames_.push_back(std::move(f));
  }
  std::vector<Frame> frames_;
};

struct Context {
  const EncodingState& enc;
  const RunTable& table;
  std::optional<std::string> obj1d;
  std::optional<std::string> obj2d;
  bool any_spatial;
};

void expressivity_frames(FrameSink& sink, Task task, const Context& ctx) {
  auto frame_field = [&](const std::vector<std::string>& dims, ColumnSource source) {
    if (dims.empty()) return;
    const auto kind = expressivity_kind(dims, ctx.table);
    for (const auto& e : spatial_expressivity(static_cast<int>(dims.size()), kind))
      sink.option(task, e.option, source, e.marginal);
  };
  frame_field(ctx.enc.s1, ColumnSource::S1);
  frame_field(ctx.enc.s2, ColumnSource::S2);
}

void optimization(FrameSink& sink, const Context& ctx) {
  constexpr auto t = Task::Optimization;
  sink.channel(t, Field::S1, {Role::InputControl, Role::InputEnvironmental});
  sink.channel(t, Field::S2, {Role::OutputDirect, Role::OutputDerived});
  expressivity_frames(sink, t, ctx);
  if (ctx.obj1d) sink.option(t, Line1D);
  if (ctx.obj2d) sink.option(t, Grid2D);
}

void fitting(FrameSink& sink, const Context& ctx) {
  constexpr auto t = Task::Fitting;
  sink.channel(t, Field::Color, {Role::OutputDerived});
  if (ctx.obj2d) sink.option(t, Jux2D);
}

void uncertainty(FrameSink& sink, const Context& ctx, bool color_claimed) {
  constexpr auto t = Task::Uncertainty;
  const bool color_used = color_claimed || std::any_of(ctx.enc.color.begin(), ctx.enc.color.end(), [&](const auto& d) {
                            return ctx.table.dimension(d).role != Role::Uncertainty;
                          });
  sink.channel(t, color_used ? Field::Opacity : Field::Color, {Role::Uncertainty});
  if (ctx.obj1d) sink.option(t, Box1D);
}

void outliers(FrameSink& sink, const Context& ctx) {
  constexpr auto t = Task::Outliers;
  auto frame_field = [&](const std::vector<std::string>& dims, ColumnSource source) {
    if (dims.empty()) return;
    const auto pick = dims.size() <= 2 ? SP : SPLOM;
    if (is_applicable(pick, ctx.enc, ctx.table)) sink.option(t, pick, source);
  };
  frame_field(ctx.enc.s1, ColumnSource::S1);
  frame_field(ctx.enc.s2, ColumnSource::S2);
  if (ctx.obj1d) sink.option(t, Line1D, std::nullopt, true);
}

void sensitivity(FrameSink& sink, const Context& ctx) {
  constexpr auto t = Task::Sensitivity;
  if (ctx.any_spatial) {
    sink.option(t, wDCP);
    sink.option(t, PC);
  }
  if (ctx.obj1d) sink.option(t, CHist1D);
  if (ctx.obj2d) sink.option(t, Sup2D);
}

void partitioning(FrameSink& sink, const Context& ctx) {
  constexpr auto t = Task::Partitioning;
  if (ctx.any_spatial) sink.option(t, Hist);
  if (ctx.obj2d) sink.option(t, Grid2D, std::nullopt, false, true);
}

const nlohmann::json& templates() {
  static const nlohmann::json doc = nlohmann::json::parse(detail::kExplanationsJson);
  return doc;
}

std::string join(const std::vector<std::string>& v) {
  if (v.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i];
  }
  return out;
}

std::string instantiate(std::string text, const EncodingState& enc, const RunTable& table) {
  auto spatial = enc.s1;
  spatial.insert(spatial.end(), enc.s2.begin(), enc.s2.end());
  const std::map<std::string, std::string> vars = {
      {"{s1}", join(enc.s1)},
      {"{s2}", join(enc.s2)},
      {"{spatial}", join(spatial)},
      {"{color}", join(enc.color)},
      {"{opacity}", join(enc.opacity)},
      {"{object1d}", object_1d(enc, table).value_or("the 1D objects")},
      {"{object2d}", object_2d(enc, table).value_or("the 2D objects")},
  };
  for (const auto& [key, value] : vars) {
    for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos + value.size()))
      text.replace(pos, key.size(), value);
  }
  return text;
}

std::string option_template(Task task, OptionId option) {
  const auto& opts = templates().at("options");
  const std::string tname(to_string(task));
  const std::string oname(to_string(option));
  if (opts.contains(tname) && opts.at(tname).contains(oname)) return opts.at(tname).at(oname).get<std::string>();
  // Fitting and Uncertainty build on the optimization overview.
  if (opts.at("Optimization").contains(oname)) return opts.at("Optimization").at(oname).get<std::string>();
  return {};
}

std::string channel_template(Task task, Field field) {
  const auto& ch = templates().at("channels");
  const std::string tname(to_string(task));
  const std::string fname(to_string(field));
  if (ch.contains(tname) && ch.at(tname).contains(fname)) return ch.at(tname).at(fname).get<std::string>();
  return {};
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

const std::array<TaskInfo, 6>& all_tasks() { return kTasks; }

const TaskInfo& task_info(Task t) { return kTasks[static_cast<std::size_t>(t)]; }

std::string_view to_string(Task t) { return task_info(t).name; }

Task parse_task(std::string_view s) {
  const auto l = lower(s);
  for (const auto& t : kTasks)
    if (lower(t.name) == l) return t.id;
  throw Error(ErrorCode::InvalidArgument, "unknown task '" + std::string(s) + "'");
}

std::string_view to_string(ExpressivityKind k) {
  return k == ExpressivityKind::RegularInputs ? "RegularInputs" : "StochasticOrOutputs";
}

std::vector<ExpressivityEntry> spatial_expressivity(int dim_count, ExpressivityKind kind) {
  if (dim_count < 1) throw Error(ErrorCode::InvalidArgument, "dimension count must be at least 1");
  const auto& row = expressivity_table()[bucket_index(dim_count)];
  return kind == ExpressivityKind::RegularInputs ? row.regular : row.stochastic;
}

std::string expressivity_bucket(int dim_count) {
  if (dim_count < 1) throw Error(ErrorCode::InvalidArgument, "dimension count must be at least 1");
  if (dim_count <= 6) return std::to_string(dim_count);
  return dim_count <= 9 ? "7-9" : "10+";
}

ExpressivityKind expressivity_kind(std::span<const std::string> dims, const RunTable& table) {
  for (const auto& name : dims) {
    const auto& d = table.dimension(name);
    if (!is_input_role(d.role) || table.effective_sampling(d) != Sampling::Regular)
      return ExpressivityKind::StochasticOrOutputs;
  }
  return ExpressivityKind::RegularInputs;
}

std::vector<Frame> RecommendationSet::frames_for(Task t) const {
  std::vector<Frame> out;
  std::copy_if(frames.begin(), frames.end(), std::back_inserter(out), [&](const Frame& f) { return f.task == t; });
  return out;
}

bool RecommendationSet::frames_option(Task t, OptionId o) const {
  return std::any_of(frames.begin(), frames.end(), [&](const Frame& f) {
    return f.task == t && f.kind == FrameKind::VisOption && f.option == o;
  });
}

const GuidanceBlock* RecommendationSet::guidance_for(Task t) const {
  for (const auto& g : guidance)
    if (g.task == t) return &g;
  return nullptr;
}

std::vector<Task> normalize_tasks(std::span<const Task> requested) {
  std::vector<Task> out;
  if (requested.empty()) return out;
  for (const auto& info : kTasks) {
    const bool wanted = info.id == Task::Optimization ||
                        std::find(requested.begin(), requested.end(), info.id) != requested.end();
    if (wanted) out.push_back(info.id);
  }
  if (out.size() > kMaxTasks)
    throw Error(ErrorCode::TooManyTasks, "at most " + std::to_string(kMaxTasks) +
                                               " tasks including Optimization, got " + std::to_string(out.size()));
  return out;
}

RecommendationSet recommend(std::span<const Task> tasks, const EncodingState& enc, const RunTable& table) {
  validate(enc, table);
  RecommendationSet recs;
  recs.tasks = normalize_tasks(tasks);
  if (recs.tasks.empty()) return recs;

  const Context ctx{enc, table, object_1d(enc, table), object_2d(enc, table), enc.spatial_count() > 0};
  auto active = [&](Task t) { return std::find(recs.tasks.begin(), recs.tasks.end(), t) != recs.tasks.end(); };

  FrameSink sink;
  for (const auto t : recs.tasks) {
    switch (t) {
      case Task::Optimization: optimization(sink, ctx); break;
      case Task::Fitting: fitting(sink, ctx); break;
      case Task::Uncertainty: uncertainty(sink, ctx, active(Task::Fitting)); break;
      case Task::Outliers: outliers(sink, ctx); break;
      case Task::Sensitivity: sensitivity(sink, ctx); break;
      case Task::Partitioning: partitioning(sink, ctx); break;
    }
  }
  recs.frames = sink.take();
  // Dashed (marginal) frames after solid ones within each task.
  std::stable_sort(recs.frames.begin(), recs.frames.end(), [](const Frame& a, const Frame& b) {
    if (a.task != b.task) return static_cast<int>(a.task) < static_cast<int>(b.task);
    return !a.marginal && b.marginal;
  });

  const auto& hints = templates().at("hints");
  for (const auto t : recs.tasks) {
    GuidanceBlock g{t, {}, {}, {}};
    std::vector<std::string> paragraphs;
    for (const auto& f : recs.frames) {
      if (f.task != t) continue;
      if (f.kind == FrameKind::ChannelField) {
        auto text = channel_template(t, f.field);
        if (!text.empty()) paragraphs.push_back(instantiate(text, enc, table));
        continue;
      }
      if (std::find(g.recommended_options.begin(), g.recommended_options.end(), f.option) !=
          g.recommended_options.end())
        continue;
      g.recommended_options.push_back(f.option);
      auto text = option_template(t, f.option);
      if (!text.empty()) paragraphs.push_back(instantiate(text, enc, table));
    }
    for (std::size_t i = 0; i < paragraphs.size(); ++i) {
      if (i) g.explanation += ' ';
      g.explanation += paragraphs[i];
    }
    for (const auto& h : hints.at(std::string(to_string(t)))) g.interaction_hints.push_back(h.get<std::string>());
    recs.guidance.push_back(std::move(g));
  }
  return recs;
}

std::string explain(const RecommendationSet& recs, Task task, OptionId option, const EncodingState& enc,
                    const RunTable& table) {
  if (!recs.frames_option(task, option))
    throw Error(ErrorCode::NotRecommended,
                std::string(to_string(option)) + " is not recommended for " + std::string(to_string(task)));
  return instantiate(option_template(task, option), enc, table);
}

std::string explain_channel(const RecommendationSet& recs, Task task, Field field, const EncodingState& enc,
                            const RunTable& table) {
  const bool framed = std::any_of(recs.frames.begin(), recs.frames.end(), [&](const Frame& f) {
    return f.task == task && f.kind == FrameKind::ChannelField && f.field == field;
  });
  if (!framed)
    throw Error(ErrorCode::NotRecommended,
                std::string(to_string(field)) + " is not framed for " + std::string(to_string(task)));
  return instantiate(channel_template(task, field), enc, table);
}

std::string complex_frame_label(const Frame& f) {
  std::string label;
  switch (f.option) {
    case Line1D: label = "1D-Line"; break;
    case Box1D: label = "1D-Box"; break;
    case CHist1D: label = "1D-Hist"; break;
    case Grid2D: label = "2D-Grid"; break;
    case Jux2D: label = "2D-Jux"; break;
    case Sup2D: label = "2D-Sup"; break;
    default: label = std::string(to_string(f.option)); break;
  }
  if (f.hide_filtered) label += " (-)";
  if (f.marginal) label = "(" + label + ")";
  return label;
}

}  // namespace rsvp
