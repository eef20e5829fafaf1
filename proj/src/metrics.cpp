#include "ehoi/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ehoi/errors.hpp"
#include "ehoi/matcher.hpp"

namespace ehoi {

namespace {

bool rank_before(const ApHandRecord& a, const ApHandRecord& b) {
    if (a.score != b.score) {
        return a.score > b.score;
    }
    if (a.frame_id != b.frame_id) {
        return a.frame_id < b.frame_id;
    }
    return a.index_in_frame < b.index_in_frame;
}

bool attributes_match(const ApHandRecord& det, const ApHandRecord& gt,
                      const MatchCriterion& criterion) {
    if (criterion.require_side && det.side != gt.side) {
        return false;
    }
    if (criterion.require_state && det.state != gt.state) {
        return false;
    }
    if (criterion.require_active_object) {
        if (!det.active_box || !gt.active_box) {
            return false;
        }
        if (det.active_category != gt.active_category) {
            return false;
        }
        if (iou(*det.active_box, *gt.active_box) < criterion.object_iou_threshold) {
            return false;
        }
    }
    return true;
}

// AP = sum over recall steps of step width times the max precision at that
// recall or beyond (the all-point envelope).
double envelope_area(const std::vector<char>& tp_flags, std::size_t n_gt) {
    const std::size_t n = tp_flags.size();
    std::vector<double> precision(n), recall(n);
    std::size_t cum_tp = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cum_tp += static_cast<unsigned char>(tp_flags[i]);
        precision[i] = static_cast<double>(cum_tp) / static_cast<double>(i + 1);
        recall[i] = static_cast<double>(cum_tp) / static_cast<double>(n_gt);
    }
    double ap = 0.0;
    double max_precision = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        max_precision = std::max(max_precision, precision[i]);
        if (tp_flags[i]) {
            const double prev_recall = i > 0 ? recall[i - 1] : 0.0;
            ap += (recall[i] - prev_recall) * max_precision;
        }
    }
    return ap;
}

}  // namespace

double iou(const BBox2D& a, const BBox2D& b) {
    const double ix = std::max(0.0, std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min));
    const double iy = std::max(0.0, std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min));
    const double inter = ix * iy;
    const double uni = a.area() + b.area() - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

std::optional<double> average_precision(const std::vector<ApHandRecord>& detections,
                                        const std::vector<ApHandRecord>& ground_truth,
                                        const MatchCriterion& criterion) {
    if (ground_truth.empty()) {
        return std::nullopt;
    }

    std::vector<std::size_t> order(detections.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return rank_before(detections[a], detections[b]);
    });

    // Per-frame index of detections (in rank order) and ground truth.
    std::map<std::string, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> frames;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        frames[detections[order[rank]].frame_id].first.push_back(rank);
    }
    for (std::size_t g = 0; g < ground_truth.size(); ++g) {
        frames[ground_truth[g].frame_id].second.push_back(g);
    }

    std::vector<char> tp_flags(detections.size(), 0);
    std::vector<const std::pair<std::vector<std::size_t>, std::vector<std::size_t>>*> frame_list;
    frame_list.reserve(frames.size());
    for (const auto& [_, entry] : frames) {
        frame_list.push_back(&entry);
    }

    // Frames are independent matching problems; flags land in per-rank slots.
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t f = 0; f < static_cast<std::ptrdiff_t>(frame_list.size()); ++f) {
        const auto& [det_ranks, gt_indices] = *frame_list[static_cast<std::size_t>(f)];
        std::vector<char> gt_matched(gt_indices.size(), 0);
        for (std::size_t rank : det_ranks) {
            const ApHandRecord& det = detections[order[rank]];
            double best_iou = 0.0;
            std::ptrdiff_t best_gt = -1;
            for (std::size_t gi = 0; gi < gt_indices.size(); ++gi) {
                if (gt_matched[gi]) {
                    continue;
                }
                const double overlap = iou(det.box, ground_truth[gt_indices[gi]].box);
                if (overlap < criterion.iou_threshold) {
                    continue;
                }
                // Ties keep the earliest (lowest-index) ground truth.
                if (best_gt < 0 || overlap > best_iou) {
                    best_iou = overlap;
                    best_gt = static_cast<std::ptrdiff_t>(gi);
                }
            }
            if (best_gt >= 0) {
                gt_matched[static_cast<std::size_t>(best_gt)] = 1;
                const ApHandRecord& gt = ground_truth[gt_indices[static_cast<std::size_t>(best_gt)]];
                tp_flags[rank] = attributes_match(det, gt, criterion) ? 1 : 0;
            }
        }
    }

    return envelope_area(tp_flags, ground_truth.size());
}

namespace {

struct PooledInputs {
    std::vector<ApHandRecord> hands;                      // all hands
    std::map<int, std::vector<ApHandRecord>> pairs;       // per active category
    std::map<int, std::vector<ApHandRecord>> objects;     // per category (box-only records)
};

// Flattens a dataset into the three pooled record sets the metric suite
// ranks. For predictions, contact hands without an explicit link are
// resolved against the frame's own detected objects via the matcher.
PooledInputs pool_records(const DatasetIndex& index, bool resolve_links) {
    PooledInputs pooled;
    for (const FrameAnnotation& frame : index.frames) {
        std::vector<std::optional<int>> resolved(frame.hands.size());
        for (std::size_t i = 0; i < frame.hands.size(); ++i) {
            resolved[i] = frame.hands[i].active_object_id;
        }
        if (resolve_links) {
            std::vector<MatchableHand> query;
            std::vector<std::size_t> query_index;
            for (std::size_t i = 0; i < frame.hands.size(); ++i) {
                const HandInstance& hand = frame.hands[i];
                if (hand.contact_state == ContactState::InContact &&
                    !hand.active_object_id.has_value() && hand.offset.has_value()) {
                    query.push_back({hand.box, hand.contact_state, hand.offset});
                    query_index.push_back(i);
                }
            }
            if (!query.empty()) {
                const auto triplets = match_active_objects(query, frame.objects, frame.width,
                                                           frame.height);
                for (std::size_t q = 0; q < triplets.size(); ++q) {
                    if (triplets[q].active_object_index) {
                        resolved[query_index[q]] =
                            frame.objects[*triplets[q].active_object_index].instance_id;
                    }
                }
            }
        }

        for (std::size_t i = 0; i < frame.hands.size(); ++i) {
            const HandInstance& hand = frame.hands[i];
            ApHandRecord rec;
            rec.frame_id = frame.frame_id;
            rec.index_in_frame = i;
            rec.score = hand.score;
            rec.box = hand.box;
            rec.side = hand.side;
            rec.state = hand.contact_state;
            if (hand.contact_state == ContactState::InContact && resolved[i].has_value()) {
                if (const ObjectInstance* obj = frame.find_object(*resolved[i])) {
                    rec.active_box = obj->box;
                    rec.active_category = obj->category_id;
                }
            }
            pooled.hands.push_back(rec);
            if (rec.active_box) {
                pooled.pairs[*rec.active_category].push_back(rec);
            }
        }
        for (std::size_t i = 0; i < frame.objects.size(); ++i) {
            const ObjectInstance& obj = frame.objects[i];
            ApHandRecord rec;
            rec.frame_id = frame.frame_id;
            rec.index_in_frame = i;
            rec.score = obj.score;
            rec.box = obj.box;
            pooled.objects[obj.category_id].push_back(rec);
        }
    }
    return pooled;
}

std::optional<double> percent(std::optional<double> ap) {
    if (!ap) {
        return std::nullopt;
    }
    return *ap * 100.0;
}

std::optional<double> mean_of_present(const std::vector<std::optional<double>>& values) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& v : values) {
        if (v) {
            sum += *v;
            ++n;
        }
    }
    if (n == 0) {
        return std::nullopt;
    }
    return sum / static_cast<double>(n);
}

std::string format_percent(const std::optional<double>& v) {
    if (!v) {
        return "n/a";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", *v);
    return buf;
}

}  // namespace

MetricsReport evaluate(const DatasetIndex& predictions, const DatasetIndex& ground_truth,
                       const EvaluateConfig& config) {
    if (predictions.categories != ground_truth.categories) {
        throw IncompatibleCategorySets("prediction and ground-truth category mappings differ");
    }

    const PooledInputs pred = pool_records(predictions, /*resolve_links=*/true);
    const PooledInputs gt = pool_records(ground_truth, /*resolve_links=*/false);

    MatchCriterion hand{config.hand_iou_threshold, false, false, false,
                        config.object_iou_threshold};
    MatchCriterion hand_side = hand;
    hand_side.require_side = true;
    MatchCriterion hand_state = hand;
    hand_state.require_state = true;
    MatchCriterion hand_obj = hand;
    hand_obj.require_active_object = true;
    MatchCriterion hand_all = hand_obj;
    hand_all.require_side = true;
    hand_all.require_state = true;
    MatchCriterion object_only{config.object_iou_threshold, false, false, false,
                               config.object_iou_threshold};

    MetricsReport report;
    report.ap_hand = percent(average_precision(pred.hands, gt.hands, hand));
    report.ap_hand_side = percent(average_precision(pred.hands, gt.hands, hand_side));
    report.ap_hand_state = percent(average_precision(pred.hands, gt.hands, hand_state));

    static const std::vector<ApHandRecord> kNone;
    std::vector<std::optional<double>> obj_aps, all_aps, det_aps;
    for (const CategoryEntry& cat : ground_truth.categories) {
        CategoryReportRow row;
        row.category_id = cat.id;
        row.name = cat.name;

        const auto gt_pairs = gt.pairs.find(cat.id);
        if (gt_pairs != gt.pairs.end()) {
            const auto pred_pairs = pred.pairs.find(cat.id);
            const auto& dets = pred_pairs != pred.pairs.end() ? pred_pairs->second : kNone;
            row.ap_hand_obj = percent(average_precision(dets, gt_pairs->second, hand_obj));
            row.ap_hand_all = percent(average_precision(dets, gt_pairs->second, hand_all));
        }
        const auto gt_objects = gt.objects.find(cat.id);
        if (gt_objects != gt.objects.end()) {
            const auto pred_objects = pred.objects.find(cat.id);
            const auto& dets = pred_objects != pred.objects.end() ? pred_objects->second : kNone;
            row.ap_obj50 = percent(average_precision(dets, gt_objects->second, object_only));
        }
        obj_aps.push_back(row.ap_hand_obj);
        all_aps.push_back(row.ap_hand_all);
        det_aps.push_back(row.ap_obj50);
        if (row.ap_hand_obj || row.ap_obj50) {
            report.per_category.push_back(std::move(row));
        }
    }
    report.map_hand_obj = mean_of_present(obj_aps);
    report.map_hand_all = mean_of_present(all_aps);
    report.map_at_50 = mean_of_present(det_aps);
    return report;
}

std::string render_metrics_table(const MetricsReport& report) {
    std::ostringstream out;
    out << "AP Hand " << format_percent(report.ap_hand) << "\n";
    out << "AP H.+Side " << format_percent(report.ap_hand_side) << "\n";
    out << "AP H.+State " << format_percent(report.ap_hand_state) << "\n";
    out << "mAP H.+Obj " << format_percent(report.map_hand_obj) << "\n";
    out << "mAP H.+All " << format_percent(report.map_hand_all) << "\n";
    out << "mAP@50 " << format_percent(report.map_at_50) << "\n";
    if (!report.per_category.empty()) {
        out << "\nper-category AP (mAP@50 / H.+Obj / H.+All):\n";
        for (const auto& row : report.per_category) {
            out << "  " << row.name;
            for (std::size_t i = row.name.size(); i < 30; ++i) {
                out << ' ';
            }
            out << format_percent(row.ap_obj50) << " / " << format_percent(row.ap_hand_obj)
                << " / " << format_percent(row.ap_hand_all) << "\n";
        }
    }
    return out.str();
}

namespace {

using nlohmann::json;

json optional_to_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<double> optional_from_json(const json& v) {
    if (v.is_null()) {
        return std::nullopt;
    }
    return v.get<double>();
}

}  // namespace

std::string metrics_report_to_json(const MetricsReport& report) {
    json doc;
    doc["ap_hand"] = optional_to_json(report.ap_hand);
    doc["ap_hand_side"] = optional_to_json(report.ap_hand_side);
    doc["ap_hand_state"] = optional_to_json(report.ap_hand_state);
    doc["map_hand_obj"] = optional_to_json(report.map_hand_obj);
    doc["map_hand_all"] = optional_to_json(report.map_hand_all);
    doc["map_at_50"] = optional_to_json(report.map_at_50);
    json rows = json::array();
    for (const auto& row : report.per_category) {
        json r;
        r["category_id"] = row.category_id;
        r["name"] = row.name;
        r["ap_hand_obj"] = optional_to_json(row.ap_hand_obj);
        r["ap_hand_all"] = optional_to_json(row.ap_hand_all);
        r["ap_obj50"] = optional_to_json(row.ap_obj50);
        rows.push_back(std::move(r));
    }
    doc["per_category"] = std::move(rows);
    return doc.dump(2) + "\n";
}

MetricsReport parse_metrics_report(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(std::string("malformed report: ") + e.what());
    }
    MetricsReport report;
    report.ap_hand = optional_from_json(doc.at("ap_hand"));
    report.ap_hand_side = optional_from_json(doc.at("ap_hand_side"));
    report.ap_hand_state = optional_from_json(doc.at("ap_hand_state"));
    report.map_hand_obj = optional_from_json(doc.at("map_hand_obj"));
    report.map_hand_all = optional_from_json(doc.at("map_hand_all"));
    report.map_at_50 = optional_from_json(doc.at("map_at_50"));
    for (const auto& r : doc.at("per_category")) {
        CategoryReportRow row;
        row.category_id = r.at("category_id").get<int>();
        row.name = r.at("name").get<std::string>();
        row.ap_hand_obj = optional_from_json(r.at("ap_hand_obj"));
        row.ap_hand_all = optional_from_json(r.at("ap_hand_all"));
        row.ap_obj50 = optional_from_json(r.at("ap_obj50"));
        report.per_category.push_back(std::move(row));
    }
    return report;
}

}  // namespace ehoi
