#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "autochaos/champernowne.hpp"
#include "autochaos/chaosnet.hpp"
#include "autochaos/dataset.hpp"
#include "autochaos/error.hpp"
#include "autochaos/features.hpp"
#include "autochaos/pipeline.hpp"
#include "autochaos/report.hpp"

namespace py = pybind11;
using namespace autochaos;

namespace {

template <typename E>
E parse_or_throw(std::optional<E> value, const std::string& what, const std::string& text) {
    if (!value)
        throw ConfigError("unknown " + what + " '" + text + "'");
    return *value;
}

PipelineConfig make_config(const std::string& mode, const std::string& rule, const std::string& scope,
                           std::uint64_t seed, double split) {
    PipelineConfig c;
    c.mode = parse_or_throw(parse_trace_mode(mode), "mode", mode);
    c.rule = parse_or_throw(parse_rule(rule), "rule", rule);
    c.scope = parse_or_throw(parse_scope(scope), "scope", scope);
    c.seed = seed;
    c.test_fraction = split;
    return c;
}

py::dict report_dict(const EvalReport& r) {
    py::dict d;
    d["dataset"] = r.dataset_id;
    d["model"] = r.model;
    d["macro_f1"] = r.macro_f1;
    d["class_f1"] = r.class_f1;
    d["class_names"] = r.class_names;
    d["train_size"] = r.train_size;
    d["test_size"] = r.test_size;
    d["predictions"] = r.predictions;
    d["test_labels"] = r.test_labels;
    d["json"] = eval_to_json(r);
    return d;
}

Dataset dataset_from_python(const std::vector<std::vector<double>>& rows,
                            const std::vector<int>& labels, std::vector<std::string> class_names) {
    Dataset ds;
    ds.id = "python";
    for (const auto& r : rows)
        ds.samples.append_row(r);
    ds.labels = labels;
    if (class_names.empty()) {
        int k = 0;
        for (int l : labels)
            k = std::max(k, l + 1);
        for (int c = 0; c < k; ++c)
            class_names.push_back(std::to_string(c));
    }
    ds.class_names = std::move(class_names);
    ds.validate();
    return ds;
}

}  // namespace

PYBIND11_MODULE(_autochaos, m) {
    m.doc() = "Champernowne orbit features and cosine classification";

    py::register_exception<IngestError>(m, "IngestError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.attr("SOURCE_LENGTH") = kSourceLength;

    m.def("digits", [](std::size_t offset, std::size_t count) {
        return ChampernowneSource::instance().slice(offset, count);
    }, py::arg("offset") = 0, py::arg("count") = kSourceLength);
    m.def("position_of", &position_of, py::arg("n"));
    m.def("orbit_value", [](std::size_t step, int window) {
        return ChampernowneSource::instance().orbit_value(step, window).value;
    }, py::arg("step"), py::arg("window") = kDefaultWindow);
    m.def("find_pattern", [](int value) {
        return ChampernowneSource::instance().find_pattern(three_digit_pattern(value));
    }, py::arg("pattern"), "first offset of the zero-padded 3-digit pattern, or None");

    m.def("firing_time_bound", [](double stimulus, const std::string& mode) {
        return firing_time_bound(stimulus, parse_or_throw(parse_trace_mode(mode), "mode", mode))
            .firing_time_bound;
    }, py::arg("stimulus"), py::arg("mode") = "bound");
    m.def("trace", [](double stimulus, const std::string& mode) {
        const auto spec = firing_time_bound(stimulus, parse_or_throw(parse_trace_mode(mode), "mode", mode));
        return build_trace(ChampernowneSource::instance(), spec).values;
    }, py::arg("stimulus"), py::arg("mode") = "bound");
    m.def("extract", [](const std::vector<double>& sample, const std::string& variant,
                        const std::string& mode) {
        return extract(sample, parse_or_throw(parse_variant(variant), "variant", variant),
                       parse_or_throw(parse_trace_mode(mode), "mode", mode));
    }, py::arg("sample"), py::arg("variant") = "tmfr", py::arg("mode") = "bound");

    m.def("cosine_similarity", [](const std::vector<double>& a, const std::vector<double>& b) {
        return cosine_similarity(a, b);
    });
    m.def("macro_f1", [](const std::vector<int>& predicted, const std::vector<int>& actual) {
        return macro_f1(predicted, actual);
    });
    m.def("skew_tent", &skew_tent, py::arg("x"), py::arg("skew"));
    m.def("chaosnet_features", [](double stimulus, double initial, double skew, double epsilon,
                                  double threshold, std::size_t cap) {
        const auto f = chaosnet_features(stimulus, {initial, skew, epsilon, threshold, cap});
        return py::make_tuple(f.firing_time, f.firing_rate, f.energy, f.entropy);
    }, py::arg("stimulus"), py::arg("initial") = 0.34, py::arg("skew") = 0.499,
       py::arg("epsilon") = 0.01, py::arg("threshold") = 0.499, py::arg("cap") = 10000);

    m.def("manifest_ids", [] {
        std::vector<std::string> ids;
        for (const auto& mf : builtin_manifests())
            ids.push_back(mf.id);
        return ids;
    });
    m.def("load_dataset", [](const std::string& id, const std::filesystem::path& data_dir) {
        const auto mf = find_manifest(id);
        if (!mf)
            throw ConfigError("unknown dataset '" + id + "'");
        const auto ds = load(*mf, data_dir);
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < ds.samples.rows(); ++i)
            rows.emplace_back(ds.samples.row(i).begin(), ds.samples.row(i).end());
        return py::make_tuple(rows, ds.labels, ds.class_names);
    }, py::arg("dataset"), py::arg("data_dir"));

    m.def("evaluate", [](const std::vector<std::vector<double>>& rows, const std::vector<int>& labels,
                         const std::string& model, const std::string& mode, const std::string& rule,
                         const std::string& scope, std::uint64_t seed, double split,
                         std::vector<std::string> class_names) {
        const auto ds = dataset_from_python(rows, labels, std::move(class_names));
        const auto id = parse_or_throw(parse_model(model), "model", model);
        return report_dict(run_model(ds, id, make_config(mode, rule, scope, seed, split)));
    }, py::arg("rows"), py::arg("labels"), py::arg("model") = "tmfr", py::arg("mode") = "bound",
       py::arg("rule") = "max", py::arg("scope") = "full", py::arg("seed") = 42,
       py::arg("split") = 0.2, py::arg("class_names") = std::vector<std::string>{});
}
