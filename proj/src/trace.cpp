#include "rkga/trace.hpp"

#include <sstream>

#include "rkga/detail/format.hpp"

namespace rkga {

std::string TraceEvent::token() const {
    switch (kind) {
    case Kind::restart: return "restart";
    case Kind::shake: return "shake";
    case Kind::migration: return "migration";
    case Kind::ipr_applied: return "ipr_applied";
    case Kind::ipr_skipped: return "ipr_skipped:" + detail;
    }
    return "?";
}

std::string trace_csv_header() {
    return "generation,f_star,population_best,median_fitness,diversity,"
           "elapsed_seconds,pop_size,elite_count,mutant_count,elite_pct,"
           "mutant_pct,rho,event";
}

std::string trace_csv_row(const GenerationRecord& rec) {
    using detail::format_double;
    std::ostringstream out;
    out << rec.generation << ',' << format_double(rec.f_star) << ','
        << format_double(rec.population_best) << ','
        << format_double(rec.median_fitness) << ','
        << format_double(rec.diversity) << ','
        << format_double(rec.elapsed_seconds) << ',' << rec.pop_size << ','
        << rec.elite_count << ',' << rec.mutant_count << ','
        << format_double(rec.elite_pct) << ',' << format_double(rec.mutant_pct)
        << ',' << format_double(rec.rho) << ',';
    for (std::size_t i = 0; i < rec.events.size(); ++i) {
        if (i) out << ';';
        out << rec.events[i].token();
    }
    return out.str();
}

} // namespace rkga
