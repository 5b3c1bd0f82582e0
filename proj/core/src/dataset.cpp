#include "svcq/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "svcq/errors.hpp"
#include "svcq/rng.hpp"

namespace svcq {

namespace {

bool parse_double(const std::string& cell, double& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    while (last != first && (*(last - 1) == ' ' || *(last - 1) == '\t' || *(last - 1) == '\r')) --last;
    if (first == last) return false;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) cells.push_back(cur);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

void Dataset::validate() const {
    const auto m = points.rows();
    if (m < 1) throw std::invalid_argument("dataset must contain at least one point");
    if (points.cols() < 1) throw std::invalid_argument("dataset dimension must be at least 1");
    if (static_cast<Eigen::Index>(ids.size()) != m)
        throw std::invalid_argument("dataset ids length does not match point count");
    std::set<std::string> unique(ids.begin(), ids.end());
    if (static_cast<Eigen::Index>(unique.size()) != m)
        throw std::invalid_argument("dataset ids are not unique");
    if (labels) {
        if (static_cast<Eigen::Index>(labels->size()) != m)
            throw std::invalid_argument("label count does not match point count");
        for (int y : *labels)
            if (y != 1 && y != -1) throw std::invalid_argument("labels must be +1 or -1");
    }
}

Dataset load_csv(const std::string& path, bool has_labels) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open input file: " + path);

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::string line;
    std::size_t line_no = 0;
    bool first_content_row = true;
    std::size_t ncols = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_commas(line);

        if (first_content_row) {
            // A header row is one where nothing parses as a number; a row
            // that mixes numbers and junk is data with a bad cell.
            bool any_numeric = false;
            double tmp;
            for (const auto& c : cells)
                if (parse_double(c, tmp)) { any_numeric = true; break; }
            first_content_row = false;
            if (!any_numeric) continue;  // skip header
        }

        if (ncols == 0) {
            ncols = cells.size();
            if (has_labels && ncols < 2)
                throw input_error("labeled input needs at least two columns at row " +
                                  std::to_string(line_no));
        } else if (cells.size() != ncols) {
            throw input_error("ragged row: expected " + std::to_string(ncols) + " columns, got " +
                              std::to_string(cells.size()) + " at row " + std::to_string(line_no));
        }

        std::vector<double> row;
        row.reserve(ncols);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v;
            if (!parse_double(cells[c], v))
                throw input_error("non-numeric cell at row " + std::to_string(line_no));
            row.push_back(v);
        }
        if (has_labels) {
            const double y = row.back();
            row.pop_back();
            if (y != 1.0 && y != -1.0)
                throw input_error("label not in {+1,-1} at row " + std::to_string(line_no));
            labels.push_back(static_cast<int>(y));
        }
        rows.push_back(std::move(row));
    }

    if (rows.empty()) throw input_error("no data rows in " + path);

    Dataset d;
    d.points.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            d.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    d.ids.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) d.ids.push_back("r" + std::to_string(i));
    if (has_labels) d.labels = std::move(labels);
    d.validate();
    return d;
}

void save_csv(const Dataset& d, const std::string& path, bool with_labels) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open output file: " + path);
    out.precision(17);
    const bool emit_labels = with_labels && d.labels.has_value();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        for (Eigen::Index j = 0; j < d.dim(); ++j) {
            if (j) out << ',';
            out << d.points(i, j);
        }
        if (emit_labels) out << ',' << (*d.labels)[static_cast<std::size_t>(i)];
        out << '\n';
    }
    if (!out) throw input_error("failed writing " + path);
}

Dataset synth_blobs(std::uint64_t seed, const std::vector<BlobSpec>& blobs) {
    if (blobs.empty()) throw std::invalid_argument("need at least one blob");
    const Eigen::Index dim = blobs.front().center.size();
    long total = 0;
    for (const auto& b : blobs) {
        if (b.center.size() != dim)
            throw std::invalid_argument("blob centers must share one dimension");
        if (b.count < 1) throw std::invalid_argument("blob count must be >= 1");
        if (!(b.spread > 0.0)) throw std::invalid_argument("blob spread must be > 0");
        total += b.count;
    }

    Dataset d;
    d.points.resize(total, dim);
    d.ids.reserve(static_cast<std::size_t>(total));
    SplitMix64 rng(seed);
    Eigen::Index row = 0;
    for (std::size_t bi = 0; bi < blobs.size(); ++bi) {
        const auto& b = blobs[bi];
        for (int k = 0; k < b.count; ++k, ++row) {
            for (Eigen::Index j = 0; j < dim; ++j)
                d.points(row, j) = b.center(j) + b.spread * rng.gaussian();
            d.ids.push_back("b" + std::to_string(bi) + "_" + std::to_string(k));
        }
    }
    d.validate();
    return d;
}

int blob_of_id(const std::string& id) {
    if (id.size() < 2 || id[0] != 'b')
        throw std::invalid_argument("id does not carry a blob index: " + id);
    const auto us = id.find('_');
    if (us == std::string::npos)
        throw std::invalid_argument("id does not carry a blob index: " + id);
    return std::stoi(id.substr(1, us - 1));
}

NormalizeResult unit_normalize(const Dataset& d) {
    NormalizeResult r;
    r.data = d;
    r.norms.reserve(static_cast<std::size_t>(d.size()));
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        const double n = d.points.row(i).norm();
        if (n == 0.0)
            throw std::invalid_argument("zero vector at index " + std::to_string(i));
        r.data.points.row(i) /= n;
        r.norms.push_back(n);
    }
    return r;
}

Dataset pca_project(const Dataset& d, int k) {
    if (k < 1 || k > d.dim())
        throw std::invalid_argument("pca: k must be in [1, " + std::to_string(d.dim()) + "]");

    const Eigen::Index m = d.size();
    Eigen::MatrixXd centered = d.points;
    const Eigen::RowVectorXd mean = centered.colwise().mean();
    centered.rowwise() -= mean;

    const Eigen::MatrixXd cov =
        (centered.transpose() * centered) / std::max<double>(1.0, static_cast<double>(m - 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("pca: covariance eigendecomposition failed");

    // Eigen returns ascending eigenvalues; take the top k in descending order.
    Eigen::MatrixXd comps(d.dim(), k);
    for (int c = 0; c < k; ++c) {
        Eigen::VectorXd v = eig.eigenvectors().col(d.dim() - 1 - c);
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        if (v(imax) < 0.0) v = -v;
        comps.col(c) = v;
    }

    Dataset out;
    out.points = centered * comps;
    out.ids = d.ids;
    out.labels = d.labels;
    return out;
}

}  // namespace svcq
