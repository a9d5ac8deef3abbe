// Copyright 2026 The pathforest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front door: convert, split, train, predict, cluster, eval.
// Exit codes: 0 success, 2 usage or data error, 1 internal error. Output
// files are written to a temporary name and renamed, so a failing command
// leaves no partial artifacts behind.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opf/log.hpp"
#include "opf/opf.hpp"

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
    bool quiet = false;
    bool verbose = false;
    bool log_json = false;
    std::string log_file;

    opf::RunLog make_log(const std::string& stage) const {
        std::optional<fs::path> file;
        if (!log_file.empty()) file = fs::path(log_file);
        return opf::RunLog(stage, log_json, quiet, verbose, file);
    }
};

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, ptr};
}

opf::FileFormat resolve_format(const std::string& flag, const fs::path& path) {
    if (!flag.empty()) return opf::format_from_name(flag);
    return opf::infer_format(path);
}

/// Runs `writer` against a temporary path, then renames over the target.
void write_atomic(const fs::path& target,
                  const std::function<void(const fs::path&)>& writer) {
    fs::path tmp = target;
    tmp += ".tmp";
    try {
        writer(tmp);
        fs::rename(tmp, target);
    } catch (...) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw;
    }
}

void write_predictions(const fs::path& target, const std::vector<int>& ids,
                       const std::vector<int>& labels, bool as_json) {
    write_atomic(target, [&](const fs::path& tmp) {
        std::string out;
        if (as_json) {
            nlohmann::json doc = nlohmann::json::array();
            for (std::size_t i = 0; i < ids.size(); ++i)
                doc.push_back({{"id", ids[i]}, {"label", labels[i]}});
            out = doc.dump(2) + "\n";
        } else {
            for (std::size_t i = 0; i < ids.size(); ++i)
                out += std::to_string(ids[i]) + " " + std::to_string(labels[i]) + "\n";
        }
        opf::detail::write_file(tmp, out);
    });
}

void log_report(opf::RunLog& log, const opf::FitReport& report) {
    log.info("training took " + format_double(report.training_time_s) + " s");
    if (report.n_prototypes > 0)
        log.info("prototypes: " + std::to_string(report.n_prototypes));
    if (report.k_best) log.info("k_best: " + std::to_string(*report.k_best));
    if (report.n_clusters) log.info("clusters: " + std::to_string(*report.n_clusters));
    if (report.validation_accuracy)
        log.info("validation accuracy: " + format_double(*report.validation_accuracy));
    if (report.n_conflicting_duplicates > 0)
        log.warn(std::to_string(report.n_conflicting_duplicates) +
                 " training samples have identical twins with different labels");
    if (report.n_label_ties > 0)
        log.warn(std::to_string(report.n_label_ties) +
                 " nodes were assigned on equal-cost ties (heap order decides)");
}

// ---------------------------------------------------------------------------

struct SplitArgs {
    std::string in, format, out_train, out_test;
    double percentage = 0.5;
    std::uint64_t seed = 0;
};

int cmd_split(const GlobalOptions& global, const SplitArgs& args) {
    auto log = global.make_log("split");
    log.info("start: " + args.in + " at " + format_double(args.percentage) + ", seed " +
             std::to_string(args.seed));

    const auto format = resolve_format(args.format, args.in);
    const auto ds = opf::load_dataset(args.in, format);
    log.detail("loaded " + std::to_string(ds.size()) + " samples, " +
               std::to_string(ds.n_features()) + " features (" + opf::format_name(format) +
               ")");
    auto [first, second] = opf::split_dataset(ds, args.percentage, args.seed);

    write_atomic(args.out_train,
                 [&](const fs::path& p) { opf::save_dataset(first, p, format); });
    write_atomic(args.out_test,
                 [&](const fs::path& p) { opf::save_dataset(second, p, format); });

    log.info("done: " + std::to_string(first.size()) + " + " +
             std::to_string(second.size()) + " samples");
    return 0;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
    std::string train, format, variant = "supervised", metric = "log_squared_euclidean";
    std::string strategy = "plain";
    std::string val, precomputed, model_out, export_json;
    int k_max = 0;
    double max_loss = opf::kDefaultPruneMaxLoss;
    int iterations = opf::kDefaultPruneIterations;
    std::uint64_t seed = 0;
};

void check_train_options(const TrainArgs& args, opf::Variant variant) {
    const bool meta = args.strategy != "plain";
    if (meta && variant != opf::Variant::supervised)
        throw opf::ValueError("--strategy " + args.strategy +
                              " applies to the supervised variant only");
    if (meta && args.val.empty())
        throw opf::ValueError("--strategy " + args.strategy + " requires --val");
    if (variant == opf::Variant::knn_supervised) {
        if (args.val.empty()) throw opf::ValueError("knn_supervised requires --val");
        if (args.k_max < 1) throw opf::ValueError("knn_supervised requires --k-max");
    }
    if (variant == opf::Variant::unsupervised) {
        if (args.k_max < 1) throw opf::ValueError("unsupervised requires --k-max");
        if (!args.val.empty())
            throw opf::ValueError("unsupervised training takes no --val");
    }
    if (!args.precomputed.empty() &&
        (variant != opf::Variant::supervised || meta))
        throw opf::ValueError("--precomputed applies to plain supervised training only");
}

int cmd_train(const GlobalOptions& global, const TrainArgs& args) {
    auto log = global.make_log("train");
    log.info("start: " + args.variant + "/" + args.strategy + " on " + args.train);

    const auto variant = opf::variant_from_name(args.variant);
    check_train_options(args, variant);
    const auto metric = opf::metric_from_name(args.metric);

    const auto ds = opf::load_dataset(args.train, resolve_format(args.format, args.train));
    log.detail("metric " + args.metric + ", " + std::to_string(ds.size()) + " samples, " +
               std::to_string(ds.n_features()) + " features");
    opf::Dataset val;
    if (!args.val.empty()) {
        val = opf::load_dataset(args.val, resolve_format(args.format, args.val));
        log.detail("validation: " + std::to_string(val.size()) + " samples");
    }

    opf::Fitted fitted;
    switch (variant) {
        case opf::Variant::supervised: {
            if (args.strategy == "plain") {
                opf::DistanceMatrix dm;
                const opf::DistanceMatrix* pre = nullptr;
                if (!args.precomputed.empty()) {
                    dm = opf::load_distance_matrix(args.precomputed);
                    pre = &dm;
                }
                fitted = opf::supervised_fit(ds.features, ds.labels, metric, pre);
            } else if (args.strategy == "learn") {
                fitted = opf::learn(ds.features, ds.labels, val.features, val.labels,
                                    args.iterations, metric, args.seed);
            } else if (args.strategy == "agglomerative") {
                fitted = opf::agglomerative_learn(ds.features, ds.labels, val.features,
                                                  val.labels, metric);
            } else if (args.strategy == "prune") {
                fitted = opf::prune(ds.features, ds.labels, val.features, val.labels,
                                    args.max_loss, args.iterations, metric);
            } else {
                throw opf::ValueError("unknown strategy '" + args.strategy + "'");
            }
            break;
        }
        case opf::Variant::knn_supervised:
            fitted = opf::knn_supervised_fit(ds.features, ds.labels, val.features,
                                             val.labels, args.k_max, metric);
            break;
        case opf::Variant::semi_supervised: {
            opf::Matrix labeled, unlabeled;
            std::vector<int> y;
            for (std::size_t i = 0; i < ds.size(); ++i) {
                if (ds.labels[i] > 0) {
                    labeled.append_row(ds.features.row(i));
                    y.push_back(ds.labels[i]);
                } else {
                    unlabeled.append_row(ds.features.row(i));
                }
            }
            fitted = opf::semi_supervised_fit(labeled, y, unlabeled, metric);
            break;
        }
        case opf::Variant::unsupervised:
            fitted = opf::unsupervised_fit(ds.features, args.k_max, metric);
            break;
    }

    log_report(log, fitted.report);
    write_atomic(args.model_out,
                 [&](const fs::path& p) { opf::save_model(fitted.model, p); });
    if (!args.export_json.empty())
        write_atomic(args.export_json,
                     [&](const fs::path& p) { opf::save_model_json(fitted.model, p); });
    log.info("done: model written to " + args.model_out);
    return 0;
}

// ---------------------------------------------------------------------------

struct PredictArgs {
    std::string model, data, format, out;
    bool as_json = false;
};

int cmd_predict(const GlobalOptions& global, const PredictArgs& args) {
    auto log = global.make_log("predict");
    log.info("start: " + args.data + " against " + args.model);

    const auto model = opf::load_model(args.model);
    const auto ds = opf::load_dataset(args.data, resolve_format(args.format, args.data));
    const auto labels = opf::predict(model, ds.features);
    write_predictions(args.out, ds.ids, labels, args.as_json);

    log.info("done: " + std::to_string(labels.size()) + " predictions to " + args.out);
    return 0;
}

// ---------------------------------------------------------------------------

struct ClusterArgs {
    std::string data, format, metric = "log_squared_euclidean", out;
    int k_max = 0;
};

int cmd_cluster(const GlobalOptions& global, const ClusterArgs& args) {
    auto log = global.make_log("cluster");
    log.info("start: " + args.data + " with k_max " + std::to_string(args.k_max));

    const auto ds = opf::load_dataset(args.data, resolve_format(args.format, args.data));
    const auto fitted =
        opf::unsupervised_fit(ds.features, args.k_max, opf::metric_from_name(args.metric));

    std::vector<int> labels(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i)
        labels[i] = fitted.model.graph.nodes[i].cluster_label;
    write_predictions(args.out, ds.ids, labels, false);

    log_report(log, fitted.report);
    log.info("done: assignments written to " + args.out);
    return 0;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
    std::string truth, pred, format;
};

std::vector<std::pair<int, int>> read_prediction_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw opf::IoError("cannot open '" + path.string() + "' for reading");
    std::vector<std::pair<int, int>> out;
    std::string line;
    std::size_t ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (line.empty()) continue;
        std::istringstream fields(line);
        int id = 0, label = 0;
        if (!(fields >> id >> label))
            throw opf::ParseError(path.string() + ":" + std::to_string(ln) +
                                  ": expected 'id label'");
        out.emplace_back(id, label);
    }
    return out;
}

int cmd_eval(const GlobalOptions& global, const EvalArgs& args) {
    auto log = global.make_log("eval");
    log.info("start: " + args.pred + " against " + args.truth);

    const auto ds = opf::load_dataset(args.truth, resolve_format(args.format, args.truth));
    const auto preds = read_prediction_file(args.pred);
    if (preds.size() != ds.size())
        throw opf::DimensionError("truth has " + std::to_string(ds.size()) +
                                  " samples, predictions file has " +
                                  std::to_string(preds.size()));

    std::vector<int> truth_by_id(ds.size(), -1);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds.ids[i] < 0 || static_cast<std::size_t>(ds.ids[i]) >= ds.size())
            throw opf::ValueError("truth ids are not 0-based contiguous");
        truth_by_id[static_cast<std::size_t>(ds.ids[i])] = ds.labels[i];
    }
    std::vector<int> truth, predicted;
    for (auto [id, label] : preds) {
        if (id < 0 || static_cast<std::size_t>(id) >= ds.size() ||
            truth_by_id[static_cast<std::size_t>(id)] < 0)
            throw opf::ValueError("prediction id " + std::to_string(id) +
                                  " has no matching truth sample");
        truth.push_back(truth_by_id[static_cast<std::size_t>(id)]);
        predicted.push_back(label);
    }

    const auto cm = opf::confusion_matrix(truth, predicted);
    const double acc = opf::opf_accuracy(truth, predicted);

    std::cout << "opf_accuracy " << format_double(acc) << "\n";
    std::cout << "confusion_matrix " << cm.n_classes << "\n";
    for (int i = 0; i < cm.n_classes; ++i) {
        std::cout << (i + 1) << ":";
        for (int j = 0; j < cm.n_classes; ++j)
            std::cout << " " << cm.counts[static_cast<std::size_t>(i)]
                                          [static_cast<std::size_t>(j)];
        std::cout << "\n";
    }
    log.info("done: accuracy " + format_double(acc));
    return 0;
}

// ---------------------------------------------------------------------------

struct ConvertArgs {
    std::string in, in_format, out, out_format;
};

int cmd_convert(const GlobalOptions& global, const ConvertArgs& args) {
    auto log = global.make_log("convert");
    log.info("start: " + args.in + " -> " + args.out);

    const auto ds = opf::load_dataset(args.in, resolve_format(args.in_format, args.in));
    const auto out_format = resolve_format(args.out_format, args.out);
    write_atomic(args.out,
                 [&](const fs::path& p) { opf::save_dataset(ds, p, out_format); });

    log.info("done: " + std::to_string(ds.size()) + " samples");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    GlobalOptions global;
    int rc = 0;

    CLI::App app{"Optimum-path forest classification and clustering toolkit"};
    app.require_subcommand(1);
    app.add_flag("--quiet", global.quiet, "Suppress info-level log records");
    app.add_flag("--verbose", global.verbose, "Emit detail log records");
    app.add_flag("--log-json", global.log_json, "Machine-readable log records");
    app.add_option("--log-file", global.log_file, "Also append log records to this file");

    SplitArgs split_args;
    auto* split = app.add_subcommand("split", "Split a dataset into two parts");
    split->add_option("--in", split_args.in, "Input dataset")->required();
    split->add_option("--format", split_args.format, "txt|csv|json|opf (default: by extension)");
    split->add_option("--percentage", split_args.percentage, "First part share, in (0,1)")
        ->required();
    split->add_option("--seed", split_args.seed, "Shuffle seed");
    split->add_option("--out-train", split_args.out_train, "First part path")->required();
    split->add_option("--out-test", split_args.out_test, "Second part path")->required();
    split->callback([&] { rc = cmd_split(global, split_args); });

    TrainArgs train_args;
    auto* train = app.add_subcommand("train", "Fit a classifier and save the model");
    train->add_option("--train", train_args.train, "Training dataset")->required();
    train->add_option("--format", train_args.format, "Dataset format");
    train->add_option("--variant", train_args.variant,
                      "supervised|knn_supervised|semi_supervised|unsupervised");
    train->add_option("--metric", train_args.metric, "Distance metric");
    train->add_option("--strategy", train_args.strategy,
                      "plain|learn|agglomerative|prune (supervised only)");
    train->add_option("--val", train_args.val, "Validation dataset");
    train->add_option("--k-max", train_args.k_max, "Largest k for kNN-graph variants");
    train->add_option("--max-loss", train_args.max_loss, "Accuracy budget for prune");
    train->add_option("--iterations", train_args.iterations,
                      "Iteration budget for learn/prune");
    train->add_option("--precomputed", train_args.precomputed,
                      "Precomputed distance matrix file");
    train->add_option("--seed", train_args.seed, "Seed for the learn strategy");
    train->add_option("--model-out", train_args.model_out, "Model output path")->required();
    train->add_option("--export-json", train_args.export_json,
                      "Also export the model as JSON");
    train->callback([&] { rc = cmd_train(global, train_args); });

    PredictArgs predict_args;
    auto* predict = app.add_subcommand("predict", "Classify a dataset with a saved model");
    predict->add_option("--model", predict_args.model, "Model file")->required();
    predict->add_option("--data", predict_args.data, "Dataset to classify")->required();
    predict->add_option("--format", predict_args.format, "Dataset format");
    predict->add_option("--out", predict_args.out, "Predictions output path")->required();
    predict->add_flag("--json", predict_args.as_json, "Write predictions as JSON");
    predict->callback([&] { rc = cmd_predict(global, predict_args); });

    ClusterArgs cluster_args;
    auto* cluster = app.add_subcommand("cluster", "Cluster a dataset");
    cluster->add_option("--data", cluster_args.data, "Dataset to cluster")->required();
    cluster->add_option("--format", cluster_args.format, "Dataset format");
    cluster->add_option("--k-max", cluster_args.k_max, "Largest k to sweep")->required();
    cluster->add_option("--metric", cluster_args.metric, "Distance metric");
    cluster->add_option("--out", cluster_args.out, "Assignments output path")->required();
    cluster->callback([&] { rc = cmd_cluster(global, cluster_args); });

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Score a predictions file against the truth");
    eval->add_option("--truth", eval_args.truth, "Dataset with true labels")->required();
    eval->add_option("--pred", eval_args.pred, "Predictions file (id label)")->required();
    eval->add_option("--format", eval_args.format, "Truth dataset format");
    eval->callback([&] { rc = cmd_eval(global, eval_args); });

    ConvertArgs convert_args;
    auto* convert = app.add_subcommand("convert", "Convert a dataset between formats");
    convert->add_option("--in", convert_args.in, "Input path")->required();
    convert->add_option("--in-format", convert_args.in_format, "Input format");
    convert->add_option("--out", convert_args.out, "Output path")->required();
    convert->add_option("--out-format", convert_args.out_format, "Output format");
    convert->callback([&] { rc = cmd_convert(global, convert_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const opf::Error& e) {
        auto log = global.make_log("error");
        log.error(e.what());
        return 2;
    } catch (const std::exception& e) {
        auto log = global.make_log("error");
        log.error(std::string("internal error: ") + e.what());
        return 1;
    }
    return rc;
}
