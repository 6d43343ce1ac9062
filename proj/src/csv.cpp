#include "dcsched/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dcsched {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    return out;
}

struct CsvReader {
    std::ifstream in;
    std::string path;
    long row = 0;

    CsvReader(const std::string& p, const std::string& expected_header) : in(p), path(p) {
        if (!in) throw IoError("cannot open " + p);
        std::string header;
        if (!std::getline(in, header)) throw IoError(path + ": empty file");
        ++row;
        if (!header.empty() && header.back() == '\r') header.pop_back();
        if (header != expected_header)
            throw IoError(path + " row 1: expected header '" + expected_header + "', got '" +
                          header + "'");
    }

    bool next(std::vector<std::string>& fields) {
        std::string line;
        while (std::getline(in, line)) {
            ++row;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            fields.clear();
            std::stringstream ss(line);
            std::string field;
            while (std::getline(ss, field, ',')) fields.push_back(field);
            if (!line.empty() && line.back() == ',') fields.push_back("");
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw IoError(path + " row " + std::to_string(row) + ": " + message);
    }

    long parse_long(const std::string& s) const {
        long value = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size())
            fail("'" + s + "' is not an integer");
        return value;
    }

    double parse_double(const std::string& s) const {
        try {
            size_t pos = 0;
            const double value = std::stod(s, &pos);
            if (pos != s.size()) fail("'" + s + "' is not a number");
            return value;
        } catch (const std::exception&) {
            fail("'" + s + "' is not a number");
        }
    }

    void expect_fields(const std::vector<std::string>& fields, size_t n) const {
        if (fields.size() != n)
            fail("expected " + std::to_string(n) + " fields, got " +
                 std::to_string(fields.size()));
    }
};

} // namespace

void write_samples_csv(const std::string& path, const SampleSet& samples) {
    auto out = open_out(path);
    out << "sample_id,k,c,value\n";
    for (int i = 0; i < samples.count(); ++i) {
        const LoadGrid& s = samples.samples[i];
        for (int c = 1; c <= s.num_classes(); ++c)
            for (int k = 1; k <= s.hours(); ++k)
                out << (i + 1) << ',' << k << ',' << c << ',' << fmt(s.at(k, c)) << '\n';
    }
    if (!out) throw IoError("write failed for " + path);
}

SampleSet load_samples_csv(const std::string& path) {
    CsvReader reader(path, "sample_id,k,c,value");
    struct Entry {
        double value;
        long row;
    };
    std::map<long, std::map<std::pair<int, int>, Entry>> grids;
    int max_k = 0, max_c = 0;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        reader.expect_fields(fields, 4);
        const long id = reader.parse_long(fields[0]);
        const long k = reader.parse_long(fields[1]);
        const long c = reader.parse_long(fields[2]);
        const double value = reader.parse_double(fields[3]);
        if (id < 1) reader.fail("sample_id must be >= 1");
        if (k < 1 || c < 1) reader.fail("k and c must be >= 1");
        if (value < 0.0)
            reader.fail("negative load value " + fields[3] + " for sample " +
                        std::to_string(id));
        auto [it, inserted] = grids[id].insert(
            {{static_cast<int>(k), static_cast<int>(c)}, {value, reader.row}});
        if (!inserted)
            reader.fail("duplicate cell (k=" + std::to_string(k) + ", c=" + std::to_string(c) +
                        ") for sample " + std::to_string(id));
        max_k = std::max(max_k, static_cast<int>(k));
        max_c = std::max(max_c, static_cast<int>(c));
    }
    if (grids.empty()) throw IoError(path + ": no sample rows");

    SampleSet samples;
    long expected_id = 1;
    for (const auto& [id, cells] : grids) {
        if (id != expected_id)
            throw IoError(path + ": sample ids must be contiguous from 1; missing " +
                          std::to_string(expected_id));
        ++expected_id;
        LoadGrid grid(max_k, max_c);
        for (int c = 1; c <= max_c; ++c)
            for (int k = 1; k <= max_k; ++k) {
                const auto it = cells.find({k, c});
                if (it == cells.end())
                    throw IoError(path + ": sample " + std::to_string(id) +
                                  " is missing cell (k=" + std::to_string(k) + ", c=" +
                                  std::to_string(c) + ")");
                grid.at(k, c) = it->second.value;
            }
        samples.samples.push_back(std::move(grid));
    }
    return samples;
}

void write_schedule_csv(const std::string& path, const ScheduleTensor& schedule) {
    auto out = open_out(path);
    out << "k,c,t,d,value\n";
    for (int d = 1; d <= schedule.clusters(); ++d)
        for (int t = 1; t <= schedule.horizon(); ++t)
            for (int c = 1; c <= schedule.num_classes(); ++c)
                for (int k = 1; k <= schedule.hours(); ++k) {
                    const double y = schedule.at(k, c, t, d);
                    if (y != 0.0)
                        out << k << ',' << c << ',' << t << ',' << d << ',' << fmt(y) << '\n';
                }
    if (!out) throw IoError("write failed for " + path);
}

ScheduleTensor load_schedule_csv(const std::string& path, const Dims& dims) {
    CsvReader reader(path, "k,c,t,d,value");
    ScheduleTensor schedule(dims.K, dims.C, dims.T, dims.D);
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        reader.expect_fields(fields, 5);
        const long k = reader.parse_long(fields[0]);
        const long c = reader.parse_long(fields[1]);
        const long t = reader.parse_long(fields[2]);
        const long d = reader.parse_long(fields[3]);
        const double value = reader.parse_double(fields[4]);
        if (k < 1 || k > dims.K || c < 1 || c > dims.C || t < 1 || t > dims.T || d < 1 ||
            d > dims.D)
            reader.fail("index outside the (K,C,T,D) box");
        schedule.at(static_cast<int>(k), static_cast<int>(c), static_cast<int>(t),
                    static_cast<int>(d)) = value;
    }
    return schedule;
}

void write_vcc_csv(const std::string& path, const ClusterGrid& vcc) {
    auto out = open_out(path);
    out << "t,d,value\n";
    for (int d = 1; d <= vcc.clusters(); ++d)
        for (int t = 1; t <= vcc.horizon(); ++t)
            out << t << ',' << d << ',' << fmt(vcc.at(t, d)) << '\n';
    if (!out) throw IoError("write failed for " + path);
}

ClusterGrid load_vcc_csv(const std::string& path) {
    CsvReader reader(path, "t,d,value");
    std::map<std::pair<int, int>, double> cells;
    int max_t = 0, max_d = 0;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        reader.expect_fields(fields, 3);
        const long t = reader.parse_long(fields[0]);
        const long d = reader.parse_long(fields[1]);
        const double value = reader.parse_double(fields[2]);
        if (t < 1 || d < 1) reader.fail("t and d must be >= 1");
        if (!cells.insert({{static_cast<int>(t), static_cast<int>(d)}, value}).second)
            reader.fail("duplicate cell");
        max_t = std::max(max_t, static_cast<int>(t));
        max_d = std::max(max_d, static_cast<int>(d));
    }
    if (cells.empty()) throw IoError(path + ": no rows");
    ClusterGrid vcc(max_t, max_d);
    for (int d = 1; d <= max_d; ++d)
        for (int t = 1; t <= max_t; ++t) {
            const auto it = cells.find({t, d});
            if (it == cells.end())
                throw IoError(path + ": missing cell (t=" + std::to_string(t) + ", d=" +
                              std::to_string(d) + ")");
            vcc.at(t, d) = it->second;
        }
    return vcc;
}

void write_jobs_csv(const std::string& path, const JobStream& stream) {
    auto out = open_out(path);
    out << "id,k,c,volume\n";
    for (const Job& job : stream.jobs)
        out << job.id << ',' << job.submit_hour << ',' << job.job_class << ','
            << fmt(job.volume) << '\n';
    if (!out) throw IoError("write failed for " + path);
}

JobStream load_jobs_csv(const std::string& path) {
    CsvReader reader(path, "id,k,c,volume");
    JobStream stream;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        reader.expect_fields(fields, 4);
        Job job;
        job.id = reader.parse_long(fields[0]);
        job.submit_hour = static_cast<int>(reader.parse_long(fields[1]));
        job.job_class = static_cast<int>(reader.parse_long(fields[2]));
        job.volume = reader.parse_double(fields[3]);
        if (job.volume <= 0.0) reader.fail("job volume must be > 0");
        stream.jobs.push_back(job);
    }
    return stream;
}

void write_executed_csv(const std::string& path, const ClusterGrid& executed) {
    auto out = open_out(path);
    out << "t,d,load\n";
    for (int d = 1; d <= executed.clusters(); ++d)
        for (int t = 1; t <= executed.horizon(); ++t)
            out << t << ',' << d << ',' << fmt(executed.at(t, d)) << '\n';
    if (!out) throw IoError("write failed for " + path);
}

void write_queue_csv(const std::string& path, const ClusterGrid& queue_length) {
    auto out = open_out(path);
    out << "t,d,length\n";
    for (int d = 1; d <= queue_length.clusters(); ++d)
        for (int t = 1; t <= queue_length.horizon(); ++t)
            out << t << ',' << d << ',' << fmt(queue_length.at(t, d)) << '\n';
    if (!out) throw IoError("write failed for " + path);
}

void write_placements_csv(const std::string& path, const std::vector<Placement>& placements) {
    auto out = open_out(path);
    out << "job_id,d,t\n";
    for (const Placement& p : placements)
        out << p.job_id << ',' << p.d << ',' << p.t << '\n';
    if (!out) throw IoError("write failed for " + path);
}

void write_calibration_csv(const std::string& path, const CalibrationResult& result) {
    auto out = open_out(path);
    out << "epsilon,violation_rate,objective\n";
    for (const CalibrationRow& row : result.rows)
        out << fmt(row.epsilon) << ',' << fmt(row.violation_rate) << ','
            << fmt(row.objective) << '\n';
    if (!out) throw IoError("write failed for " + path);
}

} // namespace dcsched
