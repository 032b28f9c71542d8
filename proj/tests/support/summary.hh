#ifndef XSOLVE_TESTS_SUMMARY_HH
#define XSOLVE_TESTS_SUMMARY_HH

#include <xsolve/xcsp_model.hh>

#include <string>

namespace xsolve::testing
{
    /// Line-oriented description of a parsed model, compared against the corpus golden files.
    auto structural_summary(const InstanceModel & model) -> std::string;
}

#endif
