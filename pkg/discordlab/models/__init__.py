from discordlab.models.state import DensityMatrix, MeasurementBasis, Spectrum, WernerParams
from discordlab.models.reports import (
    AncillaReport, BlochForm, Convention, DiscordEstimate, ErratumScanReport,
    HierarchyReport, Inequality, Route, ScanRow, Status
)
