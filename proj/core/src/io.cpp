#include "relucost/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "relucost/errors.hpp"
#include "relucost/serialize.hpp"

namespace relucost {

namespace {

[[noreturn]] void io_fail(const std::string& path, const char* what) {
    throw IoError("cannot " + std::string(what) + " '" + path + "'");
}

struct CellKey {
    int d, m, depth;
    bool operator<(const CellKey& o) const {
        if (d != o.d) return d < o.d;
        if (m != o.m) return m < o.m;
        return depth < o.depth;
    }
};

}  // namespace

void save_dataset(const std::string& path, const SphereDataset& data) {
    std::ostringstream out;
    out << "relucost-dataset 1\n";
    out << data.d << ' ' << data.m() << ' ' << data.seed << ' ' << (data.labeled() ? 1 : 0)
        << '\n';
    for (int i = 0; i < data.m(); ++i) {
        for (int r = 0; r < 2 * data.d; ++r) {
            if (r) out << ' ';
            out << format_double(data.X(r, i));
        }
        if (data.labeled()) out << ' ' << format_double(data.y[i]);
        out << '\n';
    }
    write_text_file(path, out.str());
}

SphereDataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail(path, "open");
    std::string tag;
    int version = 0;
    if (!(in >> tag >> version) || tag != "relucost-dataset" || version != 1)
        throw ParseError("not a dataset file: '" + path + "'", 0);
    SphereDataset data;
    int m = 0, labeled = 0;
    if (!(in >> data.d >> m >> data.seed >> labeled) || data.d < 1 || m < 1)
        throw ParseError("bad dataset header in '" + path + "'", 0);
    data.X.resize(2 * data.d, m);
    data.y.resize(labeled ? m : 0);
    for (int i = 0; i < m; ++i) {
        for (int r = 0; r < 2 * data.d; ++r)
            if (!(in >> data.X(r, i)))
                throw ParseError("truncated dataset row " + std::to_string(i), 0);
        if (labeled && !(in >> data.y[i]))
            throw ParseError("missing label in row " + std::to_string(i), 0);
    }
    return data;
}

namespace {

std::string format_field(double v) { return format_double(v); }

void append_row_fields(std::ostringstream& out, const ExperimentRow& r) {
    out << r.d << ',' << r.m << ',' << r.depth << ',' << r.width << ','
        << format_field(r.lambda) << ',' << format_field(r.theta) << ','
        << format_field(r.alpha) << ',' << r.seed << ',' << format_field(r.train_loss) << ','
        << format_field(r.test_loss) << ',' << format_field(r.test_se) << ','
        << format_field(r.cost) << ',' << format_field(r.tent_bound) << ',' << r.status << '\n';
}

}  // namespace

std::string experiment_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "d,m,depth,width,lambda,theta,alpha,seed,train_loss,test_loss,test_se,cost,"
           "tent_bound,status\n";
    for (const ExperimentRow& r : result.rows) append_row_fields(out, r);
    return out.str();
}

ExperimentResult parse_experiment_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty experiment CSV", 0);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string expected =
        "d,m,depth,width,lambda,theta,alpha,seed,train_loss,test_loss,test_se,cost,"
        "tent_bound,status";
    if (line != expected) throw ParseError("unexpected experiment CSV header", 0);

    ExperimentResult result;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (int f = 0; f < 13; ++f) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string::npos)
                throw ParseError("short row at line " + std::to_string(line_no), 0);
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        fields.push_back(line.substr(start));  // status may not contain commas

        const auto to_int = [&](const std::string& s) {
            try {
                std::size_t pos = 0;
                const int v = std::stoi(s, &pos);
                if (pos != s.size()) throw std::invalid_argument("trailing");
                return v;
            } catch (const std::exception&) {
                throw ParseError("bad integer '" + s + "' at line " + std::to_string(line_no), 0);
            }
        };
        const auto to_double = [&](const std::string& s) -> double {
            if (s == "nan" || s == "-nan") return std::nan("");
            try {
                std::size_t pos = 0;
                const double v = std::stod(s, &pos);
                if (pos != s.size()) throw std::invalid_argument("trailing");
                return v;
            } catch (const std::exception&) {
                throw ParseError("bad number '" + s + "' at line " + std::to_string(line_no), 0);
            }
        };

        ExperimentRow r;
        r.d = to_int(fields[0]);
        r.m = to_int(fields[1]);
        r.depth = to_int(fields[2]);
        r.width = to_int(fields[3]);
        r.lambda = to_double(fields[4]);
        r.theta = to_double(fields[5]);
        r.alpha = to_double(fields[6]);
        r.seed = to_int(fields[7]);
        r.train_loss = to_double(fields[8]);
        r.test_loss = to_double(fields[9]);
        r.test_se = to_double(fields[10]);
        r.cost = to_double(fields[11]);
        r.tent_bound = to_double(fields[12]);
        r.status = fields[13];
        result.rows.push_back(std::move(r));
    }
    return result;
}

std::string experiment_summary(const ExperimentResult& result) {
    std::map<CellKey, std::vector<const ExperimentRow*>> cells;
    for (const ExperimentRow& r : result.rows) cells[{r.d, r.m, r.depth}].push_back(&r);
    std::ostringstream out;
    out << "separation experiment summary\n";
    out << "rows " << result.rows.size() << "\n";
    for (const auto& [key, rows] : cells) {
        int ok = 0;
        double train_sum = 0.0, test_sum = 0.0, cost_sum = 0.0;
        for (const ExperimentRow* r : rows) {
            if (r->status.rfind("ok", 0) == 0) {
                ++ok;
                train_sum += r->train_loss;
                test_sum += r->test_loss;
                cost_sum += r->cost;
            }
        }
        out << "d=" << key.d << " m=" << key.m << " depth=" << key.depth << " cells="
            << rows.size() << " ok=" << ok;
        if (ok > 0) {
            out << " mean_train_loss=" << format_field(train_sum / ok)
                << " mean_test_loss=" << format_field(test_sum / ok)
                << " mean_cost=" << format_field(cost_sum / ok);
        }
        out << "\n";
    }
    return out.str();
}

std::string experiment_long_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "d,m,depth,seed,metric,value\n";
    for (const ExperimentRow& r : result.rows) {
        const std::pair<const char*, double> metrics[] = {
            {"lambda", r.lambda},     {"train_loss", r.train_loss}, {"test_loss", r.test_loss},
            {"test_se", r.test_se},   {"cost", r.cost},             {"tent_bound", r.tent_bound},
        };
        for (const auto& [name, value] : metrics) {
            out << r.d << ',' << r.m << ',' << r.depth << ',' << r.seed << ',' << name << ','
                << format_field(value) << '\n';
        }
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) io_fail(path, "open for writing");
    out << content;
    if (!out) io_fail(path, "write");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail(path, "open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    const std::string text = read_text_file(path);
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string stripped = strip(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value at line " + std::to_string(line_no) + " of '" +
                                 path + "'",
                             0);
        const std::string key = strip(stripped.substr(0, eq));
        const std::string value = strip(stripped.substr(eq + 1));
        if (key.empty())
            throw ParseError("empty key at line " + std::to_string(line_no) + " of '" + path + "'",
                             0);
        if (!kv.emplace(key, value).second)
            throw ParseError("duplicate key '" + key + "' in '" + path + "'", 0);
    }
    return kv;
}

namespace {

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(item, &pos);
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument("trailing");
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("config: bad integer list entry '" + item + "' for " + key);
        }
    }
    if (out.empty()) throw UsageError("config: empty list for " + key);
    return out;
}

double parse_double_value(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw UsageError("config: bad number '" + value + "' for " + key);
    }
}

long parse_long_value(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw UsageError("config: bad integer '" + value + "' for " + key);
    }
}

}  // namespace

void apply_experiment_config(const std::map<std::string, std::string>& kv,
                             ExperimentConfig& cfg) {
    for (const auto& [key, value] : kv) {
        if (key == "d_list") cfg.d_list = parse_int_list(key, value);
        else if (key == "m_list") cfg.m_list = parse_int_list(key, value);
        else if (key == "seeds") cfg.seeds = static_cast<int>(parse_long_value(key, value));
        else if (key == "root_seed")
            cfg.root_seed = static_cast<std::uint64_t>(parse_long_value(key, value));
        else if (key == "epsilon") cfg.epsilon = parse_double_value(key, value);
        else if (key == "theta") cfg.theta_override = parse_double_value(key, value);
        else if (key == "alpha") cfg.alpha = parse_double_value(key, value);
        else if (key == "depth2_width")
            cfg.depth2_width = static_cast<int>(parse_long_value(key, value));
        else if (key == "depth3_width1")
            cfg.depth3_width1 = static_cast<int>(parse_long_value(key, value));
        else if (key == "depth3_width2")
            cfg.depth3_width2 = static_cast<int>(parse_long_value(key, value));
        else if (key == "lambda_count")
            cfg.lambda_count = static_cast<int>(parse_long_value(key, value));
        else if (key == "lambda_min") cfg.lambda_min = parse_double_value(key, value);
        else if (key == "lambda_max") cfg.lambda_max = parse_double_value(key, value);
        else if (key == "test_samples") cfg.test_samples = parse_long_value(key, value);
        else if (key == "iters") cfg.iters = parse_long_value(key, value);
        else if (key == "adam_lr") cfg.adam_lr = parse_double_value(key, value);
        else if (key == "restarts") cfg.restarts = static_cast<int>(parse_long_value(key, value));
        else throw UsageError("config: unknown key '" + key + "'");
    }
}

std::string experiment_config_text(const ExperimentConfig& cfg) {
    std::ostringstream out;
    const auto list = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(v[i]);
        }
        return s;
    };
    out << "d_list = " << list(cfg.d_list) << '\n';
    out << "m_list = " << list(cfg.m_list) << '\n';
    out << "seeds = " << cfg.seeds << '\n';
    out << "root_seed = " << cfg.root_seed << '\n';
    out << "epsilon = " << format_double(cfg.epsilon) << '\n';
    if (cfg.theta_override > 0.0) out << "theta = " << format_double(cfg.theta_override) << '\n';
    out << "alpha = " << format_double(cfg.alpha) << '\n';
    out << "depth2_width = " << cfg.depth2_width << '\n';
    out << "depth3_width1 = " << cfg.depth3_width1 << '\n';
    out << "depth3_width2 = " << cfg.depth3_width2 << '\n';
    out << "lambda_count = " << cfg.lambda_count << '\n';
    out << "lambda_min = " << format_double(cfg.lambda_min) << '\n';
    out << "lambda_max = " << format_double(cfg.lambda_max) << '\n';
    out << "test_samples = " << cfg.test_samples << '\n';
    out << "iters = " << cfg.iters << '\n';
    out << "adam_lr = " << format_double(cfg.adam_lr) << '\n';
    out << "restarts = " << cfg.restarts << '\n';
    return out.str();
}

}  // namespace relucost
