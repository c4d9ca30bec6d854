#include "autochaos/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "autochaos/error.hpp"

namespace autochaos {

void Matrix::append_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0)
        cols_ = values.size();
    if (values.size() != cols_)
        throw std::invalid_argument("row has " + std::to_string(values.size()) +
                                    " values, matrix has " + std::to_string(cols_) + " columns");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

void Dataset::validate() const {
    if (labels.size() != samples.rows())
        throw std::invalid_argument("dataset has " + std::to_string(samples.rows()) + " rows but " +
                                    std::to_string(labels.size()) + " labels");
    for (int l : labels) {
        if (l < 0 || static_cast<std::size_t>(l) >= class_names.size())
            throw std::invalid_argument("label " + std::to_string(l) + " outside 0.." +
                                        std::to_string(class_names.size()) + "-1");
    }
    if (!feature_names.empty() && feature_names.size() != samples.cols())
        throw std::invalid_argument("feature name count does not match column count");
}

std::vector<std::size_t> class_counts(std::span<const int> labels, std::size_t num_classes) {
    std::vector<std::size_t> counts(num_classes, 0);
    for (int l : labels) {
        if (l >= 0 && static_cast<std::size_t>(l) < num_classes)
            ++counts[static_cast<std::size_t>(l)];
    }
    return counts;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\"");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line, std::string_view delimiter) {
    std::vector<std::string_view> out;
    if (delimiter == "whitespace") {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
                ++i;
            if (i >= line.size())
                break;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
                ++j;
            out.push_back(line.substr(i, j - i));
            i = j;
        }
        return out;
    }
    const char sep = delimiter.size() == 1 ? delimiter[0] : (delimiter == "\\t" ? '\t' : ',');
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

bool is_index(std::string_view ref) {
    return !ref.empty() && std::all_of(ref.begin(), ref.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::size_t resolve_column(const DatasetManifest& m, std::string_view ref,
                           const std::vector<std::string>& names, std::size_t ncols) {
    if (auto it = std::find(names.begin(), names.end(), ref); it != names.end())
        return static_cast<std::size_t>(it - names.begin());
    if (is_index(ref)) {
        const auto idx = static_cast<std::size_t>(std::stoul(std::string(ref)));
        if (idx < ncols)
            return idx;
    }
    throw IngestError(m.id + ": column '" + std::string(ref) + "' not found");
}

std::string context(std::string_view source, std::size_t line, std::size_t column,
                    const std::vector<std::string>& names) {
    std::string out = std::string(source) + ":" + std::to_string(line) + ": column " +
                      std::to_string(column);
    if (column < names.size() && !names[column].empty())
        out += " ('" + names[column] + "')";
    return out;
}

}  // namespace

Dataset load_from_text(const DatasetManifest& manifest, std::string_view text,
                       std::string_view source_name) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t line_no = 0;
    for (std::size_t start = 0; start <= text.size();) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        ++line_no;
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.find_first_not_of(" \t") != std::string_view::npos)
            lines.emplace_back(line_no, line);
        start = end + 1;
    }
    if (lines.empty())
        throw IngestError(std::string(source_name) + ": file is empty");

    std::vector<std::string> names;
    std::size_t first_data = 0;
    std::size_t ncols = 0;
    if (manifest.header) {
        for (auto f : split_fields(lines[0].second, manifest.delimiter))
            names.emplace_back(trim(f));
        ncols = names.size();
        first_data = 1;
    } else if (first_data < lines.size()) {
        ncols = split_fields(lines[0].second, manifest.delimiter).size();
    }

    const std::size_t label_col = resolve_column(manifest, manifest.label_column, names, ncols);
    std::vector<bool> used(ncols, true);
    used[label_col] = false;
    for (const auto& ref : manifest.drop_columns)
        used[resolve_column(manifest, ref, names, ncols)] = false;

    std::map<std::string, int, std::less<>> label_index;
    std::vector<std::string> class_names;
    for (std::size_t c = 0; c < manifest.classes.size(); ++c) {
        class_names.push_back(manifest.classes[c].name);
        for (const auto& raw : manifest.classes[c].raw_labels)
            label_index.emplace(raw, static_cast<int>(c));
    }

    Dataset ds;
    ds.id = manifest.id;
    ds.class_names = class_names;
    for (std::size_t j = 0; j < ncols; ++j) {
        if (used[j])
            ds.feature_names.push_back(j < names.size() ? names[j] : "x" + std::to_string(j));
    }

    const auto is_missing = [&](std::string_view cell) {
        return std::find(manifest.missing_tokens.begin(), manifest.missing_tokens.end(), cell) !=
               manifest.missing_tokens.end();
    };

    std::vector<double> row;
    for (std::size_t r = first_data; r < lines.size(); ++r) {
        const auto [ln, line] = lines[r];
        const auto fields = split_fields(line, manifest.delimiter);
        if (fields.size() != ncols)
            throw IngestError(std::string(source_name) + ":" + std::to_string(ln) + ": expected " +
                              std::to_string(ncols) + " columns, found " +
                              std::to_string(fields.size()));

        bool incomplete = false;
        for (std::size_t j = 0; j < ncols; ++j) {
            if ((used[j] || j == label_col) && is_missing(fields[j])) {
                if (!manifest.drop_incomplete_rows)
                    throw IngestError(context(source_name, ln, j, names) + ": missing value");
                incomplete = true;
            }
        }
        if (incomplete)
            continue;

        row.clear();
        for (std::size_t j = 0; j < ncols; ++j) {
            if (!used[j])
                continue;
            const auto cell = fields[j];
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc{} || ptr != cell.data() + cell.size())
                throw IngestError(context(source_name, ln, j, names) + ": non-numeric value '" +
                                  std::string(cell) + "'");
            row.push_back(value);
        }
        const auto label = label_index.find(fields[label_col]);
        if (label == label_index.end())
            throw IngestError(context(source_name, ln, label_col, names) + ": unknown label '" +
                              std::string(fields[label_col]) + "'");
        ds.samples.append_row(row);
        ds.labels.push_back(label->second);
    }

    const auto fail = [&](const std::string& what, std::size_t expected, std::size_t found) {
        throw IngestError(manifest.id + ": expected " + std::to_string(expected) + " " + what +
                          ", found " + std::to_string(found));
    };
    if (ds.samples.cols() != manifest.expected_features && !ds.samples.empty())
        fail("features", manifest.expected_features, ds.samples.cols());
    if (ds.samples.rows() != manifest.expected_samples)
        fail("samples", manifest.expected_samples, ds.samples.rows());
    const auto counts = class_counts(ds.labels, ds.num_classes());
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] != manifest.classes[c].expected_count)
            fail("samples in class '" + manifest.classes[c].name + "'",
                 manifest.classes[c].expected_count, counts[c]);
    }
    return ds;
}

Dataset load(const DatasetManifest& manifest, const std::filesystem::path& data_dir) {
    const auto path = data_dir / manifest.file;
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IngestError(manifest.id + ": cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_from_text(manifest, buffer.str(), path.string());
}

const std::vector<DatasetManifest>& builtin_manifests() {
    static const std::vector<DatasetManifest> manifests = [] {
        std::vector<DatasetManifest> v;
        auto add = [&](DatasetManifest m) { v.push_back(std::move(m)); };

        add({.id = "iris",
             .display_name = "Iris",
             .file = "iris.csv",
             .label_column = "class",
             .classes = {{"setosa", {"Iris-setosa"}, 50},
                         {"versicolor", {"Iris-versicolor"}, 50},
                         {"virginica", {"Iris-virginica"}, 50}},
             .expected_features = 4,
             .expected_samples = 150});
        add({.id = "haberman",
             .display_name = "Haberman's Survival",
             .file = "haberman.csv",
             .label_column = "status",
             .classes = {{"survived_5y_or_longer", {"1"}, 225}, {"died_within_5y", {"2"}, 81}},
             .expected_features = 3,
             .expected_samples = 306});
        add({.id = "seeds",
             .display_name = "Seeds",
             .file = "seeds_dataset.txt",
             .delimiter = "whitespace",
             .header = false,
             .label_column = "7",
             .classes = {{"kama", {"1"}, 70}, {"rosa", {"2"}, 70}, {"canadian", {"3"}, 70}},
             .expected_features = 7,
             .expected_samples = 210,
             .note = "UCI seeds_dataset.txt, user supplied"});
        add({.id = "statlog",
             .display_name = "Statlog (Heart)",
             .file = "statlog_heart.csv",
             .label_column = "class",
             .classes = {{"absence", {"1"}, 150}, {"presence", {"2"}, 120}},
             .expected_features = 13,
             .expected_samples = 270});
        add({.id = "ionosphere",
             .display_name = "Ionosphere",
             .file = "ionosphere.csv",
             .label_column = "class",
             .classes = {{"bad", {"b"}, 126}, {"good", {"g"}, 225}},
             .expected_features = 34,
             .expected_samples = 351});
        add({.id = "banknote",
             .display_name = "Bank Note Authentication",
             .file = "data_banknote_authentication.txt",
             .header = false,
             .label_column = "4",
             .classes = {{"genuine", {"0"}, 762}, {"forgery", {"1"}, 610}},
             .expected_features = 4,
             .expected_samples = 1372,
             .note = "UCI data_banknote_authentication.txt, user supplied"});
        add({.id = "breast-cancer",
             .display_name = "Breast Cancer Wisconsin (Diagnostic)",
             .file = "wdbc.csv",
             .label_column = "class",
             .classes = {{"malignant", {"M"}, 212}, {"benign", {"B"}, 357}},
             .expected_features = 30,
             .expected_samples = 569,
             .note = "30 measurements; the patient id column is not a feature"});
        add({.id = "wine",
             .display_name = "Wine",
             .file = "wine.csv",
             .label_column = "class",
             .classes = {{"1", {"1"}, 59}, {"2", {"2"}, 71}, {"3", {"3"}, 48}},
             .expected_features = 13,
             .expected_samples = 178});
        add({.id = "penguin",
             .display_name = "Palmer Penguins",
             .file = "penguins.csv",
             .label_column = "species",
             .drop_columns = {"island", "sex", "year"},
             .classes = {{"adelie", {"Adelie"}, 151},
                         {"chinstrap", {"Chinstrap"}, 68},
                         {"gentoo", {"Gentoo"}, 123}},
             .drop_incomplete_rows = true,
             .expected_features = 4,
             .expected_samples = 342,
             .note = "344 rows; the 2 rows without measurements are dropped"});
        add({.id = "sonar",
             .display_name = "Sonar",
             .file = "sonar.csv",
             .label_column = "class",
             .classes = {{"mine", {"M"}, 111}, {"rock", {"R"}, 97}},
             .expected_features = 60,
             .expected_samples = 208});
        return v;
    }();
    return manifests;
}

std::optional<DatasetManifest> find_manifest(std::string_view id) {
    for (const auto& m : builtin_manifests()) {
        if (m.id == id)
            return m;
    }
    return std::nullopt;
}

namespace {

DatasetManifest manifest_from_json(const nlohmann::json& j) {
    DatasetManifest m;
    try {
        m.id = j.at("id").get<std::string>();
        m.display_name = j.value("name", m.id);
        m.file = j.at("file").get<std::string>();
        m.delimiter = j.value("delimiter", std::string(","));
        m.header = j.value("header", true);
        const auto& label = j.at("label_column");
        m.label_column = label.is_number() ? std::to_string(label.get<int>()) : label.get<std::string>();
        for (const auto& d : j.value("drop_columns", nlohmann::json::array()))
            m.drop_columns.push_back(d.is_number() ? std::to_string(d.get<int>()) : d.get<std::string>());
        for (const auto& c : j.at("classes")) {
            ClassSpec spec;
            spec.name = c.at("name").get<std::string>();
            spec.raw_labels = c.at("labels").get<std::vector<std::string>>();
            spec.expected_count = c.at("count").get<std::size_t>();
            m.classes.push_back(std::move(spec));
        }
        m.drop_incomplete_rows = j.value("drop_incomplete_rows", false);
        if (j.contains("missing_tokens"))
            m.missing_tokens = j.at("missing_tokens").get<std::vector<std::string>>();
        m.expected_features = j.at("features").get<std::size_t>();
        m.expected_samples = j.at("samples").get<std::size_t>();
        m.note = j.value("note", std::string());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid manifest entry: " + std::string(e.what()));
    }
    return m;
}

nlohmann::json manifest_to_json(const DatasetManifest& m) {
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& c : m.classes)
        classes.push_back({{"name", c.name}, {"labels", c.raw_labels}, {"count", c.expected_count}});
    nlohmann::json j = {{"id", m.id},
                        {"name", m.display_name},
                        {"file", m.file},
                        {"delimiter", m.delimiter},
                        {"header", m.header},
                        {"label_column", m.label_column},
                        {"drop_columns", m.drop_columns},
                        {"classes", classes},
                        {"drop_incomplete_rows", m.drop_incomplete_rows},
                        {"missing_tokens", m.missing_tokens},
                        {"features", m.expected_features},
                        {"samples", m.expected_samples}};
    if (!m.note.empty())
        j["note"] = m.note;
    return j;
}

}  // namespace

std::vector<DatasetManifest> load_manifests(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open manifest file " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    const auto& entries = doc.contains("datasets") ? doc.at("datasets") : doc;
    if (!entries.is_array())
        throw ConfigError(path.string() + ": expected a list of datasets");
    std::vector<DatasetManifest> out;
    for (const auto& e : entries)
        out.push_back(manifest_from_json(e));
    return out;
}

std::string manifests_to_json(std::span<const DatasetManifest> manifests) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& m : manifests)
        list.push_back(manifest_to_json(m));
    return nlohmann::json{{"datasets", list}}.dump(2) + "\n";
}

std::filesystem::path data_directory(const std::filesystem::path& fallback) {
    if (const char* env = std::getenv("AUTOCHAOS_DATA_DIR"); env && *env)
        return env;
    return fallback;
}

}  // namespace autochaos
