from clb.verify.fixtures import fixtures_generate
from clb.verify.sampling import Sampler
from clb.verify.suites import SUITES, SuiteResult, run_suite

__all__ = ["SUITES", "Sampler", "SuiteResult", "fixtures_generate", "run_suite"]
