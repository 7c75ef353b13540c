#include "edlab/convex_body.hpp"

#include <cstdio>

namespace edlab {

ConvexBody ConvexBody::parse(const std::string& spec) {
    if (spec == "disk") return disk();
    const std::string prefix = "ellipse:";
    if (spec.rfind(prefix, 0) == 0) {
        double a = 0.0, b = 0.0;
        if (std::sscanf(spec.c_str() + prefix.size(), "a=%lf,b=%lf", &a, &b) == 2)
            return ellipse(a, b);
    }
    throw std::domain_error("body spec must be `disk` or `ellipse:a=<f>,b=<f>`, got `" +
                            spec + "`");
}

std::string ConvexBody::spec_string() const {
    if (kind_ == BodyKind::disk) return "disk";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "ellipse:a=%g,b=%g", a_, b_);
    return buf;
}

}  // namespace edlab
