from projquant.verification.suites import flat_reduction
from projquant.verification.suites import invariance
from projquant.verification.suites import sl_equivariance
from projquant.verification.suites import table1
