import inspect

import pandas as pd

from tracederiv import links
from tracederiv.base import Link


class LinkToolbox:
    """Catalogue of the available link classes, with tooltips and call signatures"""

    def __init__(self):
        classes = [
            cls
            for _, cls in inspect.getmembers(links, inspect.isclass)
            if issubclass(cls, Link)
            and not inspect.isabstract(cls)
            and not cls.__name__.startswith("_")
        ]
        self._parse_classes(classes)
        self.register_main_scope_links()

    @staticmethod
    def _get_class_info(cls) -> dict:
        return {
            "Tooltip": (cls.__doc__ or "").split("\n")[0],
            "Api": cls.__name__ + str(inspect.signature(cls)).replace(" -> None", ""),
            "Klass": cls,
        }

    def _parse_classes(self, classes):
        class_dict = {
            (cls.__module__.split(".")[-1], cls.__name__): self._get_class_info(cls)
            for cls in classes
        }
        class_df = pd.DataFrame(class_dict).T
        class_df.index.names = ["Module", "Class"]
        self.class_df = class_df.sort_index()

    def __repr__(self):
        return repr(self.class_df[["Tooltip", "Api"]])

    def __getitem__(self, class_name: str):
        info = self._get_info(class_name)
        if info.empty:
            raise KeyError(f"No link class named {class_name!r}")
        return info.iloc[0].Klass

    def _get_info(self, class_name: str) -> pd.DataFrame:
        return self.class_df[self.class_df.index.get_level_values("Class") == class_name]

    @property
    def modules(self):
        return sorted(set(self.class_df.index.get_level_values("Module")))

    @property
    def class_names(self):
        return sorted(set(self.class_df.index.get_level_values("Class")))

    def register_class(self, cls):
        key = (cls.__module__.split(".")[-1], cls.__name__)
        info = self._get_class_info(cls)
        self.class_df.loc[key, list(info)] = list(info.values())

    def register_main_scope_links(self):
        main_module = __import__("__main__")
        for _, obj in inspect.getmembers(main_module, inspect.isclass):
            if issubclass(obj, Link) and obj.__module__ == "__main__":
                self.register_class(obj)
