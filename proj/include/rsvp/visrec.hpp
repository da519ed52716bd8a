#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsvp/design_space.hpp"
#include "rsvp/layout.hpp"

namespace rsvp {

enum class Task { Optimization, Fitting, Uncertainty, Outliers, Sensitivity, Partitioning };

inline constexpr std::size_t kMaxTasks = 4;

enum class StrategyBasis { Channel, Mark };

struct TaskInfo {
  Task id;
  std::string_view name;
  std::string_view strategy_label;
  std::string_view description;
  StrategyBasis basis;
  std::string_view mdmv_strategy;  // e.g. "Overview + Color", "Line-based (1D-mark)"
  std::optional<MarkClass> mark;   // mark-based tasks only
};

/// The six tasks in cascade order.
const std::array<TaskInfo, 6>& all_tasks();
const TaskInfo& task_info(Task t);
std::string_view to_string(Task t);
Task parse_task(std::string_view s);  // case-insensitive; throws InvalidArgument

// ---------------------------------------------------------------------------
// Spatial expressivity lookup.

enum class ExpressivityKind { RegularInputs, StochasticOrOutputs };

std::string_view to_string(ExpressivityKind k);

struct ExpressivityEntry {
  OptionId option;
  bool marginal = false;

  bool operator==(const ExpressivityEntry&) const = default;
};

/// Recommended spatial encodings for dim_count dimensions (>= 1).
std::vector<ExpressivityEntry> spatial_expressivity(int dim_count, ExpressivityKind kind);

/// Bucket label of a dimension count: "1".."6", "7-9", "10+".
std::string expressivity_bucket(int dim_count);

/// Regular inputs only when every dimension is a regularly sampled input;
/// any stochastic, unknown-default or output dimension degrades the field.
ExpressivityKind expressivity_kind(std::span<const std::string> dims, const RunTable& table);

// ---------------------------------------------------------------------------
// Recommendation.

enum class FrameKind { VisOption, ChannelField };

struct Frame {
  FrameKind kind = FrameKind::VisOption;
  OptionId option = OptionId::SP;  // VisOption frames
  Field field = Field::S1;         // ChannelField frames
  std::vector<Role> hint_roles;    // ChannelField frames
  Task task = Task::Optimization;
  std::optional<ColumnSource> source;  // SMD column the frame sits on, if any
  bool marginal = false;               // dashed frame
  bool hide_filtered = false;          // Grid2D minus-mode

  bool operator==(const Frame&) const = default;
};

struct GuidanceBlock {
  Task task;
  std::vector<OptionId> recommended_options;
  std::string explanation;
  std::vector<std::string> interaction_hints;

  bool operator==(const GuidanceBlock&) const = default;
};

struct RecommendationSet {
  std::vector<Task> tasks;
  std::vector<Frame> frames;
  std::vector<GuidanceBlock> guidance;

  std::vector<Frame> frames_for(Task t) const;
  bool frames_option(Task t, OptionId o) const;
  const GuidanceBlock* guidance_for(Task t) const;
};

/// Normalizes a requested task set: adds Optimization, orders by cascade.
/// Throws TooManyTasks for more than four tasks after normalization.
std::vector<Task> normalize_tasks(std::span<const Task> requested);

RecommendationSet recommend(std::span<const Task> tasks, const EncodingState& enc, const RunTable& table);

/// Explanation for a framed option, instantiated with the encoded dimension names.
/// Throws NotRecommended when the option is not framed for the task.
std::string explain(const RecommendationSet& recs, Task task, OptionId option, const EncodingState& enc,
                    const RunTable& table);

/// Explanation for a framed channel field.
std::string explain_channel(const RecommendationSet& recs, Task task, Field field, const EncodingState& enc,
                            const RunTable& table);

/// Short label of a complex-object frame, e.g. "1D-Line", "(1D-Line)", "2D-Grid (-)".
std::string complex_frame_label(const Frame& f);

}  // namespace rsvp
