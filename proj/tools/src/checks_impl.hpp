#pragma once
#include "ekcli/checks.hpp"

namespace ekcli {

CheckResult check_bernoulli(const VerifyOptions& opt);
CheckResult check_dirichlet(const VerifyOptions& opt);
CheckResult check_one_variable(const VerifyOptions& opt);
CheckResult check_generating(const VerifyOptions& opt);
CheckResult check_translation(const VerifyOptions& opt);
CheckResult check_damerell(const VerifyOptions& opt);
CheckResult check_theta_integrality(const VerifyOptions& opt);
CheckResult check_kronecker_integrality(const VerifyOptions& opt);
CheckResult check_period(const VerifyOptions& opt);
CheckResult check_two_variable(const VerifyOptions& opt);
CheckResult check_restriction(const VerifyOptions& opt);
CheckResult check_yager(const VerifyOptions& opt);

}  // namespace ekcli
