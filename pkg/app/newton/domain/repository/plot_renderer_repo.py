from abc import ABC, abstractmethod

from app.newton.domain.plot_spec import PlotSpec


class IPlotRenderer(ABC):
    """
    뉴턴 다각형 그림 렌더러 인터페이스
    """

    @abstractmethod
    def render(self, spec: PlotSpec) -> str:
        """
        명세를 결정적인 텍스트로 그립니다.

        Args:
            spec: 그릴 레이어와 눈금, 출력 크기

        Returns:
            str: 같은 명세에 대해 항상 같은 바이트의 텍스트

        Raises:
            EmptySpec: 레이어가 없을 때
        """
        pass
