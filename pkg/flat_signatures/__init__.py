from .facade import ConfigManager, SignatureFacade

__all__ = ["ConfigManager", "SignatureFacade"]
