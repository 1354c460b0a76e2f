#ifndef G2CM_REPORT_HPP
#define G2CM_REPORT_HPP

#include "g2cm/pipeline.hpp"

namespace g2cm {

/// fields.jsonl: one line per field, bit-exact integer serialization.
void emit_fields_jsonl(const std::vector<EnumeratedField>& fields, const std::string& path);

/// report.json / summary.csv / slack SVG plots under out_dir.
void emit_report(const PipelineResult& res, const std::string& out_dir,
                 const std::string& format);

} // namespace g2cm

#endif
