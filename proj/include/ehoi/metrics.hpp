#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ehoi/annotation.hpp"
#include "ehoi/geometry.hpp"

namespace ehoi {

/// Intersection-over-union of two boxes; 0 when the union has zero area.
double iou(const BBox2D& a, const BBox2D& b);

/// What a detection must get right, beyond box overlap, to count as a true
/// positive. Hand matching is greedy by IoU only; these flags decide TP/FP
/// against the matched ground truth afterwards.
struct MatchCriterion {
    double iou_threshold = 0.5;
    bool require_side = false;
    bool require_state = false;
    /// Requires both records to carry an active object whose boxes reach
    /// object_iou_threshold and whose categories agree.
    bool require_active_object = false;
    double object_iou_threshold = 0.5;
};

/// One hand record (detection or ground truth) for AP computation.
/// index_in_frame is the hand's position in its frame's list; together with
/// frame_id it breaks score ties, which makes results independent of the
/// order records are pooled in.
struct ApHandRecord {
    std::string frame_id;
    std::size_t index_in_frame = 0;
    double score = 1.0;
    BBox2D box;
    HandSide side = HandSide::Left;
    ContactState state = ContactState::NoContact;
    std::optional<BBox2D> active_box;
    std::optional<int> active_category;
};

/// Area under the all-point precision-recall envelope for the ranked
/// detections against per-frame ground truth. Absent when there is no
/// ground truth at all (no precision-recall curve exists).
std::optional<double> average_precision(const std::vector<ApHandRecord>& detections,
                                        const std::vector<ApHandRecord>& ground_truth,
                                        const MatchCriterion& criterion);

struct CategoryReportRow {
    int category_id = 0;
    std::string name;
    std::optional<double> ap_hand_obj;  // percent
    std::optional<double> ap_hand_all;  // percent
    std::optional<double> ap_obj50;     // percent
};

/// All values are percentages. A metric is absent when its ground-truth
/// side is empty (no GT hands, or no category present in GT).
struct MetricsReport {
    std::optional<double> ap_hand;
    std::optional<double> ap_hand_side;
    std::optional<double> ap_hand_state;
    std::optional<double> map_hand_obj;
    std::optional<double> map_hand_all;
    std::optional<double> map_at_50;
    std::vector<CategoryReportRow> per_category;
};

struct EvaluateConfig {
    double hand_iou_threshold = 0.5;
    double object_iou_threshold = 0.5;
};

/// Scores predictions against ground truth with the full metric suite.
/// Contact hands predicted with an offset but no explicit active-object
/// link are resolved through the interaction matcher first.
MetricsReport evaluate(const DatasetIndex& predictions, const DatasetIndex& ground_truth,
                       const EvaluateConfig& config = {});

/// Plain-table rendering with the standard column names.
std::string render_metrics_table(const MetricsReport& report);

/// Machine-readable rendering; parse_metrics_report inverts it losslessly.
std::string metrics_report_to_json(const MetricsReport& report);
MetricsReport parse_metrics_report(const std::string& text);

}  // namespace ehoi
