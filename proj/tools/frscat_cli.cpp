// frscat: command-line front end for the fractional wavelet scattering
// library. Every command is deterministic under a fixed config and seed;
// outputs go to the declared locations only. Exit codes: 0 ok, 2 config
// error, 3 I/O error, 4 data-shape error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "frscat/classifier.hpp"
#include "frscat/errors.hpp"
#include "frscat/features.hpp"
#include "frscat/filterbank.hpp"
#include "frscat/fixtures.hpp"
#include "frscat/metrics.hpp"
#include "frscat/pnm.hpp"
#include "frscat/scattering.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace frscat;

namespace {

struct RunConfig {
    FilterBankSpec bank;
    std::vector<FractionalOrderPair> orders = default_order_grid();
    int window = 32;
    int stride = 0;  // 0 -> window/2
    double overlap_threshold = 0.95;
    EvalProtocol protocol;
    std::uint64_t seed = 0;

    RunConfig() {
        bank.grid_width = 64;
        bank.grid_height = 64;
        protocol.pca_dims = {10, 15, 20, 25, 30, 35, 40, 45, 50, 60, 70, 80};
    }
};

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("config '" + path + "': " + e.what());
    }
    if (j.contains("seed")) {
        cfg.seed = j["seed"].get<std::uint64_t>();
        cfg.protocol.seed = cfg.seed;
    }
    if (j.contains("bank")) {
        const auto& b = j["bank"];
        if (b.contains("scales")) cfg.bank.num_scales = b["scales"].get<int>();
        if (b.contains("angles")) cfg.bank.num_angles = b["angles"].get<int>();
        if (b.contains("sigma_phi")) cfg.bank.sigma_phi = b["sigma_phi"].get<double>();
        if (b.contains("sigma_psi")) cfg.bank.sigma_psi = b["sigma_psi"].get<double>();
        if (b.contains("grid_width")) cfg.bank.grid_width = b["grid_width"].get<int>();
        if (b.contains("grid_height")) cfg.bank.grid_height = b["grid_height"].get<int>();
        if (b.contains("max_order")) cfg.bank.max_order = b["max_order"].get<int>();
    }
    if (j.contains("orders")) {
        const auto& o = j["orders"];
        if (o.is_string()) {
            if (o.get<std::string>() != "default18")
                throw std::invalid_argument("config: unknown order grid '" + o.get<std::string>() + "'");
            cfg.orders = default_order_grid();
        } else {
            cfg.orders.clear();
            for (const auto& pair : o) {
                if (!pair.is_array() || pair.size() != 2)
                    throw std::invalid_argument("config: each order entry must be [alpha1, alpha2]");
                cfg.orders.push_back({pair[0].get<double>(), pair[1].get<double>()});
            }
            if (cfg.orders.empty()) throw std::invalid_argument("config: empty order grid");
        }
    }
    if (j.contains("patch")) {
        const auto& p = j["patch"];
        if (p.contains("window")) cfg.window = p["window"].get<int>();
        if (p.contains("stride")) cfg.stride = p["stride"].get<int>();
        if (p.contains("overlap_threshold")) cfg.overlap_threshold = p["overlap_threshold"].get<double>();
    }
    if (j.contains("protocol")) {
        const auto& p = j["protocol"];
        if (p.contains("train_ratio")) cfg.protocol.train_ratio = p["train_ratio"].get<double>();
        if (p.contains("repetitions")) cfg.protocol.repetitions = p["repetitions"].get<int>();
        if (p.contains("pca_dims")) cfg.protocol.pca_dims = p["pca_dims"].get<std::vector<int>>();
        if (p.contains("seed")) cfg.protocol.seed = p["seed"].get<std::uint64_t>();
    }
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create directory '" + dir + "': " + ec.message());
}

std::string path_tag(const Path& path) {
    if (path.empty()) return "m0";
    std::string s = "m" + std::to_string(path.size());
    for (const auto& step : path)
        s += "_j" + std::to_string(step.scale) + "k" + std::to_string(step.angle);
    return s;
}

json lp_report_json(const FilterBankSpec& spec, const LPReport& rep) {
    return json{{"scales", spec.num_scales},
                {"angles", spec.num_angles},
                {"sigma_phi", spec.sigma_phi},
                {"sigma_psi", spec.sigma_psi},
                {"grid_width", spec.grid_width},
                {"grid_height", spec.grid_height},
                {"min_sum", rep.min_sum},
                {"max_sum", rep.max_sum},
                {"epsilon", rep.epsilon}};
}

RealImage gray(const std::vector<RealImage>& channels) {
    if (channels.size() == 1) return channels.front();
    RealImage out(channels.front().width, channels.front().height);
    for (std::size_t i = 0; i < out.size(); ++i) {
        double s = 0.0;
        for (const auto& ch : channels) s += ch.data[i];
        out.data[i] = s / static_cast<double>(channels.size());
    }
    return out;
}

int cmd_filterbank(const RunConfig& cfg, const std::string& out_dir, bool as_json) {
    FilterBank bank = build_morlet_bank(cfg.bank);
    LPReport rep = littlewood_paley(bank);
    json report = lp_report_json(cfg.bank, rep);
    if (!out_dir.empty()) {
        ensure_dir(out_dir);
        std::ofstream out(out_dir + "/lp_report.json");
        if (!out) throw io_error("cannot write lp_report.json");
        out << report.dump(2) << "\n";

        auto magnitude = [](const ComplexImage& f) {
            RealImage m(f.width, f.height);
            double peak = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                m.data[i] = std::abs(f.data[i]);
                peak = std::max(peak, m.data[i]);
            }
            return std::pair{m, peak};
        };
        auto [phi_img, phi_peak] = magnitude(bank.phi_hat);
        write_pgm8_scaled(out_dir + "/phi.pgm", phi_img, 0.0, phi_peak > 0 ? phi_peak : 1.0);
        for (std::size_t j = 0; j < bank.psi_hat.size(); ++j)
            for (std::size_t k = 0; k < bank.psi_hat[j].size(); ++k) {
                auto [img, peak] = magnitude(bank.psi_hat[j][k]);
                write_pgm8_scaled(out_dir + "/psi_j" + std::to_string(j) + "_k" + std::to_string(k) + ".pgm",
                                  img, 0.0, peak > 0 ? peak : 1.0);
            }
    }
    if (as_json || out_dir.empty()) std::cout << report.dump(2) << "\n";
    return 0;
}

int cmd_scatter(const RunConfig& cfg, const std::string& image_path, const std::string& out_dir,
                const FractionalOrderPair& orders) {
    auto channels = read_image(image_path);
    RealImage x = gray(channels);

    FilterBankSpec spec = cfg.bank;
    spec.grid_width = x.width;
    spec.grid_height = x.height;
    FilterBank bank = build_morlet_bank(spec);
    ScatteringResult res = scatter(x, bank, orders);

    ensure_dir(out_dir);
    json sidecar;
    sidecar["alpha1"] = orders.alpha1;
    sidecar["alpha2"] = orders.alpha2;
    json files = json::array();
    for (std::size_t p = 0; p < res.paths.size(); ++p) {
        const RealImage& img = res.coefficients[p];
        double lo = img.data.empty() ? 0.0 : img.data.front(), hi = lo;
        for (double v : img.data) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        std::string name = "s_" + path_tag(res.paths[p]) + ".pgm";
        write_pgm8_scaled(out_dir + "/" + name, img, lo, hi);
        json steps = json::array();
        for (const auto& step : res.paths[p]) steps.push_back({step.scale, step.angle});
        files.push_back({{"file", name}, {"path", steps}, {"min", lo}, {"max", hi}});
    }
    sidecar["coefficients"] = files;
    {
        std::ofstream out(out_dir + "/coefficients.json");
        if (!out) throw io_error("cannot write coefficients.json");
        out << sidecar.dump(2) << "\n";
    }

    json ledger;
    ledger["input_norm_sq"] = norm_sq(x);
    ledger["s_energy"] = res.ledger.s_energy;
    ledger["u_energy"] = res.ledger.u_energy;
    double nsq = norm_sq(x);
    json rows = json::array();
    for (const auto& row : energy_report(res, nsq))
        rows.push_back({{"order", row.order}, {"captured", row.captured}, {"residual", row.residual}});
    ledger["per_order"] = rows;
    std::ofstream out(out_dir + "/ledger.json");
    if (!out) throw io_error("cannot write ledger.json");
    out << ledger.dump(2) << "\n";
    return 0;
}

int cmd_fixtures(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    FixtureSet set = make_fixture_set(cfg.seed ? cfg.seed : kFixtureSeed);
    write_fixture_set(set, out_dir);
    std::cout << "wrote " << set.images.size() << " fixture images to " << out_dir << "\n";
    return 0;
}

int cmd_features(const RunConfig& cfg, const std::vector<std::string>& images,
                 const std::vector<std::string>& masks, const std::string& out_path,
                 const std::string& csv_path) {
    if (images.empty()) throw std::invalid_argument("features: no input images");
    if (images.size() != masks.size())
        throw std::invalid_argument("features: need exactly one mask per image");

    FilterBankSpec spec = cfg.bank;
    spec.grid_width = cfg.window;
    spec.grid_height = cfg.window;
    FilterBank bank = build_morlet_bank(spec);

    std::vector<LabeledPatch> patches;
    for (std::size_t i = 0; i < images.size(); ++i) {
        auto channels = read_image(images[i]);
        InstanceMask mask = read_mask(masks[i]);
        auto extracted = extract_patches(channels, mask, cfg.window, cfg.overlap_threshold,
                                         cfg.stride, static_cast<int>(i));
        for (auto& p : extracted) patches.push_back(normalize_patch(p));
    }
    if (patches.empty()) throw shape_error("features: no patches survived the overlap rule");

    FeatureTensor tensor = assemble_q(patches, bank, cfg.orders);
    save_tensor(tensor, out_path);
    if (!csv_path.empty()) write_tensor_csv(tensor, csv_path);
    std::cout << "tensor " << tensor.length << " x " << tensor.count << " x " << tensor.settings
              << " -> " << out_path << "\n";
    return 0;
}

int cmd_train(const std::string& tensor_path, int order_index, int dim, const std::string& out_path) {
    FeatureTensor t = load_tensor(tensor_path);
    if (order_index < 0 || static_cast<std::size_t>(order_index) >= t.settings)
        throw std::invalid_argument("train: order index out of range");
    std::map<std::int32_t, std::vector<const double*>> by_class;
    for (std::size_t n = 0; n < t.count; ++n)
        by_class[t.labels[n]].push_back(t.signal(static_cast<std::size_t>(order_index), n));
    std::vector<PcaClassModel> models;
    for (const auto& [cls, cols] : by_class)
        models.push_back(train_pca(cols, t.length, dim, static_cast<int>(cls)));
    save_models(models, out_path);
    std::cout << "trained " << models.size() << " class models -> " << out_path << "\n";
    return 0;
}

int cmd_classify(const std::string& tensor_path, const std::string& models_path, int order_index,
                 const std::string& out_path) {
    FeatureTensor t = load_tensor(tensor_path);
    if (order_index < 0 || static_cast<std::size_t>(order_index) >= t.settings)
        throw std::invalid_argument("classify: order index out of range");
    auto models = load_models(models_path);
    std::ofstream out(out_path);
    if (!out) throw io_error("cannot write '" + out_path + "'");
    out.precision(17);
    out << "signal,label,predicted";
    for (const auto& m : models) out << ",err_class_" << m.class_id;
    out << "\n";
    std::size_t wrong = 0;
    for (std::size_t n = 0; n < t.count; ++n) {
        auto res = classify(t.signal(static_cast<std::size_t>(order_index), n), t.length, models);
        if (res.label != t.labels[n]) ++wrong;
        out << n << "," << t.labels[n] << "," << res.label;
        for (double e : res.errors) out << "," << e;
        out << "\n";
    }
    std::cout << "error rate " << static_cast<double>(wrong) / static_cast<double>(t.count) << " -> "
              << out_path << "\n";
    return 0;
}

int cmd_evaluate(const RunConfig& cfg, const std::string& tensor_path, const std::string& out_path) {
    FeatureTensor t = load_tensor(tensor_path);
    ErrorTable table = evaluate(t, cfg.protocol);
    write_error_table_csv(table, out_path);
    std::cout << "error table " << table.order_grid.size() << " x " << table.pca_dims.size()
              << " -> " << out_path << "\n";
    return 0;
}

int cmd_evaluate_masks(const std::vector<std::string>& seg_paths,
                       const std::vector<std::string>& gt_paths, const std::string& out_path,
                       const std::string& csv_path) {
    if (seg_paths.empty() || seg_paths.size() != gt_paths.size())
        throw std::invalid_argument("evaluate-masks: need matching --seg and --gt lists");
    json per_image = json::array();
    double f1_sum = 0.0, dice_sum = 0.0, haus_sum = 0.0;
    std::ostringstream csv;
    csv.precision(17);
    csv << "seg,gt,tp,fp,fn,precision,recall,f1,object_dice,object_hausdorff\n";
    for (std::size_t i = 0; i < seg_paths.size(); ++i) {
        InstanceMask seg = read_mask(seg_paths[i]);
        InstanceMask gt = read_mask(gt_paths[i]);
        MatchTable table = match_objects(seg, gt);
        F1Result f1 = f1_score(table);
        double dice = object_dice(seg, gt);
        double haus = object_hausdorff(seg, gt);
        f1_sum += f1.f1;
        dice_sum += dice;
        haus_sum += haus;
        per_image.push_back({{"seg", seg_paths[i]},
                             {"gt", gt_paths[i]},
                             {"tp", table.tp},
                             {"fp", table.fp},
                             {"fn", table.fn},
                             {"precision", f1.precision},
                             {"recall", f1.recall},
                             {"f1", f1.f1},
                             {"object_dice", dice},
                             {"object_hausdorff", haus}});
        csv << seg_paths[i] << "," << gt_paths[i] << "," << table.tp << "," << table.fp << ","
            << table.fn << "," << f1.precision << "," << f1.recall << "," << f1.f1 << "," << dice
            << "," << haus << "\n";
    }
    double n = static_cast<double>(seg_paths.size());
    json report;
    report["images"] = per_image;
    report["mean"] = {{"f1", f1_sum / n}, {"object_dice", dice_sum / n}, {"object_hausdorff", haus_sum / n}};
    std::ofstream out(out_path);
    if (!out) throw io_error("cannot write '" + out_path + "'");
    out << report.dump(2) << "\n";
    if (!csv_path.empty()) {
        std::ofstream csv_out(csv_path);
        if (!csv_out) throw io_error("cannot write '" + csv_path + "'");
        csv_out << csv.str();
    }
    std::cout << "mean f1 " << f1_sum / n << ", object dice " << dice_sum / n
              << ", object hausdorff " << haus_sum / n << " -> " << out_path << "\n";
    return 0;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

int cmd_rank(const std::string& scores_path, const std::string& ranks_path,
             const std::string& out_path) {
    if (scores_path.empty() == ranks_path.empty())
        throw std::invalid_argument("rank: pass exactly one of --scores or --ranks");
    const std::string& in_path = scores_path.empty() ? ranks_path : scores_path;
    std::ifstream in(in_path);
    if (!in) throw io_error("cannot open '" + in_path + "'");

    std::string header;
    if (!std::getline(in, header)) throw io_error("'" + in_path + "': empty file");
    std::vector<MethodRanks> ranked;
    std::vector<MethodScores> scores;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 7)
            throw shape_error("rank: expected 7 columns (name + six values), got " +
                              std::to_string(cells.size()));
        std::array<double, 6> v{};
        for (int i = 0; i < 6; ++i) {
            try {
                v[static_cast<std::size_t>(i)] = std::stod(cells[static_cast<std::size_t>(i) + 1]);
            } catch (...) {
                throw shape_error("rank: bad numeric cell '" + cells[static_cast<std::size_t>(i) + 1] + "'");
            }
        }
        if (!scores_path.empty()) {
            scores.push_back({cells[0], v[0], v[1], v[2], v[3], v[4], v[5]});
        } else {
            MethodRanks m;
            m.name = cells[0];
            m.ranks = v;
            aggregate_ranks(m);
            ranked.push_back(m);
        }
    }
    if (!scores_path.empty()) {
        if (scores.empty()) throw shape_error("rank: no method rows");
        ranked = rank_aggregate(scores);
    } else if (ranked.empty()) {
        throw shape_error("rank: no method rows");
    }

    std::ofstream out(out_path);
    if (!out) throw io_error("cannot write '" + out_path + "'");
    out << "name,rank_f1_a,rank_f1_b,rank_dice_a,rank_dice_b,rank_haus_a,rank_haus_b,rs,wrs\n";
    for (const auto& m : ranked) {
        out << m.name;
        for (double r : m.ranks) out << "," << r;
        out << "," << m.rs << "," << m.wrs << "\n";
    }
    std::cout << "ranked " << ranked.size() << " methods -> " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional wavelet scattering toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override its keys");

    // shared overrides
    auto add_bank_flags = [&](CLI::App* sub) {
        sub->add_option("--scales", cfg.bank.num_scales, "scale levels S");
        sub->add_option("--angles", cfg.bank.num_angles, "rotation count K");
        sub->add_option("--sigma-phi", cfg.bank.sigma_phi, "low-pass width");
        sub->add_option("--sigma-psi", cfg.bank.sigma_psi, "band-pass width");
        sub->add_option("--max-order", cfg.bank.max_order, "deepest scattering layer");
    };

    auto* fb = app.add_subcommand("filterbank", "build the Morlet bank and report the frame bounds");
    std::string fb_out;
    bool fb_json = false;
    add_bank_flags(fb);
    fb->add_option("--grid-width", cfg.bank.grid_width);
    fb->add_option("--grid-height", cfg.bank.grid_height);
    fb->add_option("--out", fb_out, "output directory for the report and filter images");
    fb->add_flag("--json", fb_json, "print the report to stdout");

    auto* sc = app.add_subcommand("scatter", "scatter one image and dump coefficients + ledger");
    std::string sc_image, sc_out;
    FractionalOrderPair sc_orders;
    add_bank_flags(sc);
    sc->add_option("--image", sc_image, "input PGM/PPM")->required();
    sc->add_option("--out", sc_out, "output directory")->required();
    sc->add_option("--alpha1", sc_orders.alpha1, "fractional order along rows");
    sc->add_option("--alpha2", sc_orders.alpha2, "fractional order along columns");

    auto* fx = app.add_subcommand("fixtures", "write the bundled synthetic texture fixtures");
    std::string fx_out;
    fx->add_option("--out", fx_out, "output directory")->required();
    fx->add_option("--seed", cfg.seed, "generator seed");

    auto* ft = app.add_subcommand("features", "extract labeled patches and assemble the feature tensor");
    std::vector<std::string> ft_images, ft_masks;
    std::string ft_out, ft_csv;
    add_bank_flags(ft);
    ft->add_option("--images", ft_images, "input images")->required();
    ft->add_option("--masks", ft_masks, "instance masks, one per image")->required();
    ft->add_option("--out", ft_out, "output tensor (FRSC)")->required();
    ft->add_option("--csv", ft_csv, "also export CSV");
    ft->add_option("--window", cfg.window, "patch window");
    ft->add_option("--stride", cfg.stride, "center stride (default window/2)");
    ft->add_option("--overlap-threshold", cfg.overlap_threshold, "target overlap fraction");

    auto* tr = app.add_subcommand("train", "fit per-class PCA models on one order slice");
    std::string tr_tensor, tr_out;
    int tr_order = 0, tr_dim = 10;
    tr->add_option("--tensor", tr_tensor)->required();
    tr->add_option("--order-index", tr_order, "order-grid index");
    tr->add_option("--dim", tr_dim, "retained PCA dimensions");
    tr->add_option("--out", tr_out, "output models (FRSM)")->required();

    auto* cl = app.add_subcommand("classify", "classify an order slice against saved models");
    std::string cl_tensor, cl_models, cl_out;
    int cl_order = 0;
    cl->add_option("--tensor", cl_tensor)->required();
    cl->add_option("--models", cl_models)->required();
    cl->add_option("--order-index", cl_order);
    cl->add_option("--out", cl_out)->required();

    auto* ev = app.add_subcommand("evaluate", "error-rate table over order grid and PCA dims");
    std::string ev_tensor, ev_out;
    ev->add_option("--tensor", ev_tensor)->required();
    ev->add_option("--out", ev_out)->required();
    ev->add_option("--train-ratio", cfg.protocol.train_ratio);
    ev->add_option("--repetitions", cfg.protocol.repetitions);
    ev->add_option("--seed", cfg.protocol.seed);
    ev->add_option("--pca-dims", cfg.protocol.pca_dims, "dimensions to sweep");

    auto* em = app.add_subcommand("evaluate-masks", "GlaS-style scores for mask pairs");
    std::vector<std::string> em_seg, em_gt;
    std::string em_out, em_csv;
    em->add_option("--seg", em_seg, "segmentation masks")->required();
    em->add_option("--gt", em_gt, "ground-truth masks")->required();
    em->add_option("--out", em_out, "JSON report")->required();
    em->add_option("--csv", em_csv, "also export CSV");

    auto* rk = app.add_subcommand("rank", "rank-sum table from method scores (or given ranks)");
    std::string rk_scores, rk_ranks, rk_out;
    rk->add_option("--scores", rk_scores, "CSV: name,f1_a,f1_b,dice_a,dice_b,haus_a,haus_b");
    rk->add_option("--ranks", rk_ranks, "CSV with the six per-column ranks instead of scores");
    rk->add_option("--out", rk_out)->required();

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        // config file is applied before flag values, which CLI11 assigns on
        // parse; parse twice so flags override config keys
        app.parse(argc, argv);
        if (!config_path.empty()) {
            apply_config_file(cfg, config_path);
            app.clear();
            app.parse(argc, argv);
        }

        if (*fb) return cmd_filterbank(cfg, fb_out, fb_json);
        if (*sc) return cmd_scatter(cfg, sc_image, sc_out, sc_orders);
        if (*fx) return cmd_fixtures(cfg, fx_out);
        if (*ft) return cmd_features(cfg, ft_images, ft_masks, ft_out, ft_csv);
        if (*tr) return cmd_train(tr_tensor, tr_order, tr_dim, tr_out);
        if (*cl) return cmd_classify(cl_tensor, cl_models, cl_order, cl_out);
        if (*ev) return cmd_evaluate(cfg, ev_tensor, ev_out);
        if (*em) return cmd_evaluate_masks(em_seg, em_gt, em_out, em_csv);
        if (*rk) return cmd_rank(rk_scores, rk_ranks, rk_out);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const shape_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
