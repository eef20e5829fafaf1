#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ehoi/annotation_io.hpp"
#include "ehoi/dataset_check.hpp"
#include "ehoi/errors.hpp"
#include "ehoi/generate.hpp"
#include "ehoi/losses.hpp"
#include "ehoi/metrics.hpp"
#include "ehoi/raster.hpp"
#include "ehoi/scene.hpp"

namespace fs = std::filesystem;

namespace {

// Exit codes are part of the interface: 0 success, 1 validation failures,
// 2 usage/config error, 3 I/O error.
enum ExitStatus : int {
    kOk = 0,
    kValidationFailures = 1,
    kUsageError = 2,
    kIoError = 3,
};

void print_stats(const ehoi::DatasetStats& s) {
    std::printf("#images %" PRIu64 "\n", s.n_images);
    std::printf("#hands %" PRIu64 "\n", s.n_hands);
    std::printf("#EHOIs %" PRIu64 "\n", s.n_ehois);
    std::printf("#left hands %" PRIu64 "\n", s.n_left);
    std::printf("#right hands %" PRIu64 "\n", s.n_right);
    std::printf("#objects %" PRIu64 "\n", s.n_objects);
}

// Accepts either the annotation file itself or its dataset directory.
std::string resolve_annotation_path(const std::string& path) {
    if (fs::is_directory(path)) {
        return (fs::path(path) / "annotations.json").string();
    }
    return path;
}

std::string dataset_dir_of(const std::string& path) {
    if (fs::is_directory(path)) {
        return path;
    }
    return fs::path(path).parent_path().string();
}

int cmd_generate(const std::string& config_path, const std::string& out_dir, int workers,
                 std::optional<std::uint64_t> seed_override) {
    ehoi::ScenarioConfig config = ehoi::load_scenario_config_file(config_path);
    if (seed_override) {
        config.master_seed = *seed_override;
    }
    const ehoi::DatasetIndex index = ehoi::generate_dataset(config, out_dir, workers);
    print_stats(ehoi::compute_stats(index));
    std::printf("content-hash %016" PRIx64 "\n", ehoi::hash_directory(out_dir));
    return kOk;
}

int cmd_validate(const std::string& path, bool deep) {
    const ehoi::DatasetIndex index = ehoi::load_dataset_file(resolve_annotation_path(path));
    std::vector<ehoi::Violation> violations;
    for (const auto& frame : index.frames) {
        for (auto& v : ehoi::validate_frame(frame)) {
            violations.push_back(std::move(v));
        }
    }
    if (deep) {
        for (auto& v : ehoi::deep_check_dataset(index, dataset_dir_of(path))) {
            violations.push_back(std::move(v));
        }
    }
    for (const auto& v : violations) {
        std::printf("%s\n", v.render().c_str());
    }
    if (violations.empty()) {
        std::printf("ok: %zu frames valid\n", index.frames.size());
        return kOk;
    }
    std::printf("%zu violations\n", violations.size());
    return kValidationFailures;
}

int cmd_stats(const std::string& path) {
    const ehoi::DatasetIndex index = ehoi::load_dataset_file(resolve_annotation_path(path));
    const ehoi::DatasetStats s = ehoi::compute_stats(index);
    print_stats(s);
    std::printf("(%" PRIu64 ", %" PRIu64 ", %" PRIu64 ", %" PRIu64 ", %" PRIu64 ", %" PRIu64
                ")\n",
                s.n_images, s.n_hands, s.n_ehois, s.n_left, s.n_right, s.n_objects);
    return kOk;
}

int cmd_evaluate(const std::string& pred_path, const std::string& gt_path, double iou_threshold,
                 const std::string& report_path) {
    const ehoi::DatasetIndex pred = ehoi::load_dataset_file(resolve_annotation_path(pred_path));
    const ehoi::DatasetIndex gt = ehoi::load_dataset_file(resolve_annotation_path(gt_path));
    ehoi::EvaluateConfig config;
    config.hand_iou_threshold = iou_threshold;
    const ehoi::MetricsReport report = ehoi::evaluate(pred, gt, config);
    std::printf("%s", ehoi::render_metrics_table(report).c_str());
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) {
            throw ehoi::IoFailure("cannot open " + report_path + " for writing");
        }
        out << ehoi::metrics_report_to_json(report);
    }
    return kOk;
}

int cmd_loss(const std::string& pred_path, const std::string& gt_path, double max_depth,
             const ehoi::DepthLossWeights& weights) {
    const ehoi::DepthRaster d = ehoi::read_depth_raster(pred_path);
    const ehoi::DepthRaster d_star = ehoi::read_depth_raster(gt_path);
    const ehoi::GrayImage a = ehoi::normalize_depth(d, max_depth);
    const ehoi::GrayImage b = ehoi::normalize_depth(d_star, max_depth);
    const ehoi::DepthLossTerms terms = ehoi::depth_loss_terms(a, b, weights);
    std::printf("edge_ssim %s\n", ehoi::format_real(terms.edge_ssim).c_str());
    std::printf("depth_ssim %s\n", ehoi::format_real(terms.depth_ssim).c_str());
    std::printf("l1 %s\n", ehoi::format_real(terms.l1).c_str());
    std::printf("total %s\n", ehoi::format_real(terms.total).c_str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthetic egocentric hand-object interaction dataset toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int workers = 0;
    std::optional<std::uint64_t> seed_override;
    auto* generate = app.add_subcommand("generate", "generate a synthetic dataset");
    generate->add_option("config", config_path, "scenario config (JSON)")->required();
    generate->add_option("-o,--out", out_dir, "output directory")->required();
    generate->add_option("--workers", workers, "worker threads (0 = default)");
    generate->add_option("--seed", seed_override, "override master_seed");

    std::string validate_path;
    bool deep = false;
    auto* validate = app.add_subcommand("validate", "check dataset invariants");
    validate->add_option("dataset", validate_path, "dataset directory or annotation file")
        ->required();
    validate->add_flag("--deep", deep, "also cross-check rasters and scenes");

    std::string stats_path;
    auto* stats = app.add_subcommand("stats", "print dataset statistics");
    stats->add_option("dataset", stats_path, "dataset directory or annotation file")->required();

    std::string pred_path, gt_path, report_path;
    double iou_threshold = 0.5;
    auto* evaluate = app.add_subcommand("evaluate", "score predictions against ground truth");
    evaluate->add_option("predictions", pred_path, "prediction document")->required();
    evaluate->add_option("ground_truth", gt_path, "ground-truth document")->required();
    evaluate->add_option("--iou", iou_threshold, "hand IoU threshold")->default_val(0.5);
    evaluate->add_option("--report", report_path, "write machine-readable report here");

    std::string loss_pred, loss_gt;
    double max_depth = ehoi::kDefaultMaxDepthMeters;
    ehoi::DepthLossWeights weights;
    auto* loss = app.add_subcommand("loss", "depth loss between two depth rasters");
    loss->add_option("predicted", loss_pred, "predicted depth raster")->required();
    loss->add_option("reference", loss_gt, "reference depth raster")->required();
    loss->add_option("--max-depth", max_depth, "normalization constant, meters");
    loss->add_option("--alpha", weights.alpha, "edge SSIM weight");
    loss->add_option("--beta", weights.beta, "depth SSIM weight");
    loss->add_option("--gamma", weights.gamma, "L1 weight");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (generate->parsed()) {
            return cmd_generate(config_path, out_dir, workers, seed_override);
        }
        if (validate->parsed()) {
            return cmd_validate(validate_path, deep);
        }
        if (stats->parsed()) {
            return cmd_stats(stats_path);
        }
        if (evaluate->parsed()) {
            return cmd_evaluate(pred_path, gt_path, iou_threshold, report_path);
        }
        if (loss->parsed()) {
            return cmd_loss(loss_pred, loss_gt, max_depth, weights);
        }
    } catch (const ehoi::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ehoi::SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ehoi::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ehoi::ReferentialError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ehoi::IncompatibleCategorySets& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ehoi::RasterFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ehoi::PlacementFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const ehoi::IoFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}
