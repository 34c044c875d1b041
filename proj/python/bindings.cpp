#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <spdlog/spdlog.h>

#include "woce/benchmark.hpp"
#include "woce/consensus.hpp"
#include "woce/dataset.hpp"
#include "woce/evaluation.hpp"
#include "woce/sampling.hpp"

namespace py = pybind11;
using namespace woce;

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

Partition to_partition(const std::vector<int>& labels) {
    return validate_partition(std::span<const int>(labels), labels.size());
}

ReferenceSet to_reference(const std::vector<std::vector<int>>& partitions) {
    ReferenceSet e;
    for (const auto& labels : partitions) {
        e.partitions.push_back(to_partition(labels));
    }
    return e;
}

ConstraintSet to_constraints(const Pairs& must, const Pairs& cannot) {
    ConstraintSet cs;
    for (const auto& [i, j] : must) {
        cs.must.push_back({i, j});
    }
    for (const auto& [i, j] : cannot) {
        cs.cannot.push_back({i, j});
    }
    return cs;
}

Pairs to_pairs(const std::vector<IndexPair>& pairs) {
    Pairs out;
    for (const auto& p : pairs) {
        out.emplace_back(p.first, p.second);
    }
    return out;
}

py::dict breakdown_dict(const UniformityBreakdown& u) {
    py::dict d;
    d["eta"] = u.eta;
    d["xi"] = u.xi;
    d["theta"] = u.theta;
    d["raw"] = u.raw;
    d["final"] = u.final;
    return d;
}

GeneratorSpec parse_generator(const std::string& kind, const std::string& linkage, const std::string& metric, int k,
                              std::uint64_t seed) {
    GeneratorSpec spec;
    spec.k = k;
    spec.seed = seed;
    if (kind == "kmeans") {
        spec.kind = GeneratorKind::kmeans;
    } else if (kind == "fuzzy-cmeans") {
        spec.kind = GeneratorKind::fuzzy_cmeans;
    } else if (kind == "gmm") {
        spec.kind = GeneratorKind::gmm;
    } else if (kind == "subtractive") {
        spec.kind = GeneratorKind::subtractive;
    } else if (kind == "agglomerative") {
        spec.kind = GeneratorKind::agglomerative;
    } else if (kind == "spectral") {
        spec.kind = GeneratorKind::spectral_sparse;
    } else {
        throw InvalidInput("unknown generator '" + kind + "'");
    }
    static const std::pair<const char*, Linkage> linkages[] = {
        {"single", Linkage::single}, {"average", Linkage::average}, {"complete", Linkage::complete}, {"ward", Linkage::ward}};
    static const std::pair<const char*, Metric> metrics[] = {
        {"euclidean", Metric::euclidean}, {"hamming", Metric::hamming}, {"cosine", Metric::cosine}};
    bool found = false;
    for (const auto& [name, value] : linkages) {
        if (linkage == name) {
            spec.linkage = value;
            found = true;
        }
    }
    if (!found) {
        throw InvalidInput("unknown linkage '" + linkage + "'");
    }
    found = false;
    for (const auto& [name, value] : metrics) {
        if (metric == name) {
            spec.metric = value;
            found = true;
        }
    }
    if (!found) {
        throw InvalidInput("unknown metric '" + metric + "'");
    }
    return spec;
}

}  // namespace

PYBIND11_MODULE(_woce, m) {
    m.doc() = "Weighted cluster ensembles with constraint projection";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    m.def("set_log_level", [](const std::string& level) { spdlog::set_level(spdlog::level::from_str(level)); },
          py::arg("level"), "spdlog level name: trace, debug, info, warn, error, off.");

    m.def("zscore", [](const Matrix& x) { return zscore_normalize({DataMatrix(x), std::nullopt, ""}).data.values(); },
          py::arg("x"), "Per-feature standardization with the population standard deviation.");

    m.def("map_independent", [](const Matrix& x, int d) { return map_independent(DataMatrix(x), d).values(); },
          py::arg("x"), py::arg("d") = 0, "Project centered data onto its leading covariance eigenvectors.");

    m.def(
        "constraint_projection",
        [](const Matrix& x, const Pairs& must, const Pairs& cannot, int d) {
            return constraint_projection(DataMatrix(x), to_constraints(must, cannot), d).values();
        },
        py::arg("x"), py::arg("must") = Pairs{}, py::arg("cannot") = Pairs{}, py::arg("d") = 0);

    m.def(
        "generate",
        [](const Matrix& x, const std::string& kind, int k, std::uint64_t seed, const std::string& linkage,
           const std::string& metric) {
            return run_generator(DataMatrix(x), parse_generator(kind, linkage, metric, k, seed)).labels();
        },
        py::arg("x"), py::arg("kind"), py::arg("k"), py::arg("seed") = 0, py::arg("linkage") = "average",
        py::arg("metric") = "euclidean",
        "Run one base clusterer: kmeans, fuzzy-cmeans, gmm, subtractive, agglomerative or spectral.");

    m.def(
        "uniformity",
        [](const std::vector<int>& labels, const std::vector<std::vector<int>>& reference) {
            return breakdown_dict(uniformity(to_partition(labels), to_reference(reference)));
        },
        py::arg("labels"), py::arg("reference"));

    m.def(
        "score_partitions",
        [](const std::vector<std::vector<int>>& partitions, const std::string& mode) {
            py::list out;
            for (const auto& u : score_reference_set(to_reference(partitions), parse_uniformity_mode(mode))) {
                out.append(breakdown_dict(u));
            }
            return out;
        },
        py::arg("partitions"), py::arg("mode") = "batch");

    m.def(
        "weights",
        [](const std::vector<std::vector<int>>& partitions, const std::string& weight_mode,
           const std::string& uniformity_mode) {
            ReferenceSet e = to_reference(partitions);
            assign_uniformities(e, parse_uniformity_mode(uniformity_mode));
            return weight_vector(e, parse_weight_mode(weight_mode)).weights;
        },
        py::arg("partitions"), py::arg("weight_mode") = "minmax", py::arg("uniformity_mode") = "batch");

    m.def(
        "weac_matrix",
        [](const std::vector<std::vector<int>>& partitions, const std::vector<double>& weights) {
            return weac_matrix(to_reference(partitions), {weights, WeightMode::raw}).entries;
        },
        py::arg("partitions"), py::arg("weights"));

    m.def(
        "eac_matrix",
        [](const std::vector<std::vector<int>>& partitions) { return eac_matrix(to_reference(partitions)).entries; },
        py::arg("partitions"));

    m.def(
        "consensus",
        [](const std::vector<std::vector<int>>& partitions, const std::vector<double>& weights, int k) {
            return consensus_partition(to_reference(partitions), {weights, WeightMode::raw}, k).labels();
        },
        py::arg("partitions"), py::arg("weights"), py::arg("k"),
        "Average-linkage cut of the weighted co-association matrix.");

    m.def(
        "woce",
        [](const Matrix& x, int k, const Pairs& must, const Pairs& cannot, int d, int ensemble_size, std::uint64_t seed,
           const std::string& weight_mode, const std::string& uniformity_mode) {
            WoceOptions opts;
            opts.k = k;
            opts.d = d;
            opts.ensemble_size = ensemble_size;
            opts.seed = seed;
            opts.weight_mode = parse_weight_mode(weight_mode);
            opts.uniformity_mode = parse_uniformity_mode(uniformity_mode);
            const DataMatrix data(x);
            const ConstraintSet cs = to_constraints(must, cannot);
            const WoceResult r = [&] {
                py::gil_scoped_release release;
                return run_woce(data, cs, opts);
            }();
            py::list partitions;
            py::list generators;
            py::list uniformities;
            for (std::size_t t = 0; t < r.reference.size(); ++t) {
                partitions.append(py::cast(r.reference.partitions[t].labels()));
                generators.append(generator_name(r.schedule.specs[t]));
                uniformities.append(r.scores[t].raw);
            }
            py::dict out;
            out["labels"] = r.partition.labels();
            out["partitions"] = partitions;
            out["generators"] = generators;
            out["uniformity"] = uniformities;
            out["weights"] = r.weights.weights;
            out["coassociation"] = r.coassociation.entries;
            return out;
        },
        py::arg("x"), py::arg("k"), py::arg("must") = Pairs{}, py::arg("cannot") = Pairs{}, py::arg("d") = 0,
        py::arg("ensemble_size") = 20, py::arg("seed") = 0, py::arg("weight_mode") = "minmax",
        py::arg("uniformity_mode") = "batch",
        "Full pipeline. Returns a dict with the final labels and the ensemble diagnostics.");

    m.def(
        "accuracy",
        [](const std::vector<int>& pred, const std::vector<int>& truth) {
            return accuracy_hungarian(to_partition(pred), truth);
        },
        py::arg("pred"), py::arg("truth"));

    m.def(
        "nmi", [](const std::vector<int>& a, const std::vector<int>& b) { return nmi(to_partition(a), to_partition(b)); },
        py::arg("a"), py::arg("b"));

    m.def(
        "halfring",
        [](std::size_t n, double noise, std::uint64_t seed) {
            auto ds = gen_halfring(n, noise, seed);
            return py::make_tuple(ds.data.values(), *ds.labels);
        },
        py::arg("n") = 400, py::arg("noise") = 0.1, py::arg("seed") = 0, "Returns (X, y).");

    m.def(
        "sample_constraints",
        [](const Matrix& x, const std::vector<int>& labels, double percent, std::uint64_t seed) {
            const auto cs = sample_constraints({DataMatrix(x), labels, ""}, percent, seed);
            return py::make_tuple(to_pairs(cs.must), to_pairs(cs.cannot));
        },
        py::arg("x"), py::arg("labels"), py::arg("percent"), py::arg("seed") = 0, "Returns (must, cannot) pair lists.");

    m.def(
        "load_csv",
        [](const std::string& path, const std::string& label_col) {
            auto ds = load_csv(path, LabelColumn::parse(label_col));
            py::object labels = ds.labels ? py::cast(*ds.labels) : py::none();
            return py::make_tuple(ds.data.values(), labels, ds.data.feature_names());
        },
        py::arg("path"), py::arg("label_col") = "last", "Returns (X, labels or None, feature names).");
}
