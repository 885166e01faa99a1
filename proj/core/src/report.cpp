#include "kex/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kex {

std::string format_number(double x) {
    if (std::isfinite(x) && x == std::floor(x) && std::fabs(x) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", x);
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string stats_csv(const UtilityDistribution& dist) {
    std::ostringstream out;
    out << "agent,mean,variance,se_mean,se_var,trials\n";
    for (std::size_t a = 1; a < dist.per_agent.size(); ++a) {
        out << a << ',' << format_number(dist.mean(static_cast<int>(a)).value()) << ','
            << format_number(dist.variance(static_cast<int>(a)).value()) << ",,,"
            << dist.outcome_count << "\n";
    }
    return out.str();
}

std::string stats_csv(const MomentsReport& report) {
    std::ostringstream out;
    out << "agent,mean,variance,se_mean,se_var,trials\n";
    for (std::size_t a = 1; a < report.per_agent.size(); ++a) {
        const AgentMoments& m = report.per_agent[a];
        out << a << ',' << format_number(m.mean.value()) << ',';
        if (m.variance) out << format_number(*m.variance);
        out << ',';
        if (m.se_mean) out << format_number(*m.se_mean);
        out << ',';
        if (m.se_var) out << format_number(*m.se_var);
        out << ',' << report.trials << "\n";
    }
    return out.str();
}

std::string deviate_csv(const DeviationReport& report) {
    std::ostringstream out;
    out << "agent,hidden_set,truthful_eu,deviating_eu,gain\n";
    out << report.agent << ',';
    for (std::size_t i = 0; i < report.best_hidden.size(); ++i) {
        if (i) out << ';';
        out << report.best_hidden[i];
    }
    out << ',' << format_number(report.truthful_eu.value()) << ','
        << format_number(report.deviating_eu().value()) << ','
        << format_number(report.gain.value()) << "\n";
    return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write to " + tmp + " failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("rename to " + path + " failed");
    }
}

}  // namespace kex
